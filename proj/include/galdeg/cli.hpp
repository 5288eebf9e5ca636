#pragma once

#include <ostream>

namespace galdeg {

/// Exit codes: 0 success, 2 parse or validation error, 3 enumeration budget
/// exceeded, 4 internal error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitInternal = 4;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace galdeg
