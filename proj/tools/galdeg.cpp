#include <iostream>

#include "galdeg/cli.hpp"

int main(int argc, char** argv) { return galdeg::run_cli(argc, argv, std::cout, std::cerr); }
