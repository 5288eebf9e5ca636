#include <doctest.h>

#include <random>

#include "galdeg/io.hpp"

using namespace galdeg;

namespace {

CycElem z(std::size_t m, std::size_t e = 1) { return CycElem::zeta(m, e); }
CycElem q(std::size_t m, const Rational& v) { return CycElem(m, v); }

}  // namespace

TEST_CASE("rationals") {
  CHECK(parse_rational("7") == 7);
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(parse_rational(" 12345678901234567890123 ") == Rational(Integer("12345678901234567890123")));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK(rational_string(Rational(-4, 6)) == "-2/3");
  CHECK(rational_string(Rational(5)) == "5");
}

TEST_CASE("cyclotomic element text") {
  CHECK(parse_cycelem("1 + 2*zeta", 3) == q(3, 1) + q(3, 2) * z(3));
  CHECK(parse_cycelem("-1/3*zeta", 5) == q(5, Rational(-1, 3)) * z(5));
  CHECK(parse_cycelem("2zeta", 5) == q(5, 2) * z(5));
  CHECK(parse_cycelem("zeta^3", 3) == q(3, 1));
  CHECK(parse_cycelem("zeta^2 - zeta^2", 7).is_zero());
  CHECK(parse_cycelem("7", 1) == q(1, 7));
  CHECK_THROWS_AS(parse_cycelem("1 + + zeta", 3), ParseError);
  CHECK_THROWS_AS(parse_cycelem("zeta^", 3), ParseError);
  CHECK_THROWS_AS(parse_cycelem("x", 3), ParseError);
  CHECK(parse_cycelem_list("1, zeta, zeta^2", 3) == std::vector<CycElem>{q(3, 1), z(3), z(3, 2)});
}

TEST_CASE("text and JSON round trips") {
  std::mt19937 rng(1);
  std::uniform_int_distribution<long> d(-50, 50), den(1, 9);
  for (std::size_t m : {1U, 3U, 5U, 8U, 12U}) {
    for (int i = 0; i < 40; ++i) {
      std::vector<Rational> c(m);
      for (auto& x : c) {
        x = Rational(d(rng), den(rng));
        x.canonicalize();
      }
      const CycElem a(m, c);
      CHECK(parse_cycelem(a.to_string(), m) == a);
      const Json j = to_json(a);
      CHECK(cycelem_from_json(j) == a);
      CHECK(cycelem_from_json(Json::parse(j.dump())) == a);
      CHECK(parse_cycelem(j.dump(), m) == a);
    }
  }
  const auto j = to_json(q(3, Rational(-1, 3)) + q(3, Rational(-2, 3)) * z(3));
  CHECK(j["m"] == 3);
  CHECK(j["coeffs"] == Json::parse(R"([["-1","3"],["-2","3"]])"));
  CHECK_THROWS(cycelem_from_json(Json::parse(R"({"m": 3, "coeffs": [["1","0"]]})")));
  CHECK_THROWS(parse_cycelem(R"({"m": 5, "coeffs": []})", 3));
}

TEST_CASE("polynomial text") {
  auto f = parse_multipoly("1:3");
  CHECK(f.num_vars() == 1);
  CHECK(f.terms().size() == 1);
  CHECK(f.terms()[0].exponents == std::vector<unsigned>{3});
  f = parse_multipoly("1:1,1; 2:2,0 -1:0,0");
  CHECK(f.num_vars() == 2);
  CHECK(f.terms().size() == 3);
  CHECK(parse_multipoly("0:0").is_zero());
  CHECK_THROWS_AS(parse_multipoly("1:1;1:1,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_multipoly("x^2"), ParseError);
  CHECK_THROWS_AS(parse_multipoly(""), ParseError);
  CHECK(parse_index_list("1, 4,7") == std::vector<std::size_t>{1, 4, 7});
  CHECK_THROWS_AS(parse_index_list("1,-2"), ParseError);
}

TEST_CASE("structured values") {
  const auto cfg = FqConfig::create(3, 2);
  CHECK(to_json(*cfg) == Json::parse(R"({"p":3,"k":2,"modulus":[1,0,1]})"));
  const PeriodCertificate c{2, 3, 11, 1, true};
  CHECK(to_json(c) == Json::parse(R"({"N":2,"r":3,"horizon":11,"first_index":1,"exact":true})"));
  CHECK(pattern_string({true, false, false, true}) == "TFFT");

  const Recurrence fib{1, {q(1, 1), q(1, 1)}, {q(1, 1), q(1, 1)}};
  const auto jr = to_json(fib);
  CHECK(jr["order"] == 2);
  CHECK(cycelem_from_json(jr["coeffs"][1]) == q(1, 1));
  const RationalFn fn{CycPoly(1, {q(1, 1)}), CycPoly(1, {q(1, 1), q(1, -1), q(1, -1)})};
  CHECK(to_json(fn)["text"] == "(1)/(1 - T - T^2)");
  const RationalFn poly{CycPoly(3, {q(3, 1), q(3, 1) + q(3, 2) * z(3)}), CycPoly(3, {q(3, 1)})};
  CHECK(to_json(poly)["text"] == "1 + (1 + 2*zeta)*T");

  ZeroSetDescription zs;
  zs.r = 3;
  zs.residues = {0};
  zs.exactness = Exactness::certified;
  const auto jz = to_json(zs);
  CHECK(jz["r"] == 3);
  CHECK(jz["exactness"] == "certified");
}
