#include <doctest.h>

#include <algorithm>

#include "galdeg/dynamics.hpp"

using namespace galdeg;

namespace {

CycElem z(std::size_t m, std::size_t e = 1) { return CycElem::zeta(m, e); }
CycElem q(std::size_t m, long v) { return CycElem(m, Rational(v)); }

CycPoly square(std::size_t m) { return CycPoly(m, {q(m, 0), q(m, 0), q(m, 1)}); }

}  // namespace

TEST_CASE("orbits") {
  auto o = iterate(square(16), z(16), 6);
  REQUIRE(o.points.size() == 7);
  CHECK(o.points[0] == z(16));
  CHECK(o.points[1] == z(16, 2));
  CHECK(o.points[2] == z(16, 4));
  CHECK(o.points[3] == q(16, -1));
  CHECK(o.points[4] == q(16, 1));
  CHECK(o.points[6] == q(16, 1));
  CHECK_FALSE(o.truncated);

  o = iterate(CycPoly(3, {q(3, 0), z(3)}), q(3, 1), 4);
  CHECK(o.points == std::vector<CycElem>{q(3, 1), z(3), z(3, 2), q(3, 1), z(3)});

  o = iterate(CycPoly(1, {q(1, 1), q(1, 0), q(1, 1)}), q(1, 0), 5);
  const std::vector<long> want = {0, 1, 2, 5, 26, 677};
  for (std::size_t n = 0; n < want.size(); ++n) CHECK(o.points[n] == q(1, want[n]));
}

TEST_CASE("truncation") {
  // x^2 + 1 from 3 grows doubly exponentially.
  const auto o = iterate(CycPoly(1, {q(1, 1), q(1, 0), q(1, 1)}), q(1, 3), 100, 200);
  CHECK(o.truncated);
  CHECK(o.points.size() < 101);
  for (std::size_t b : o.bits) CHECK(b <= 200);
  for (std::size_t n = 1; n < o.points.size(); ++n) CHECK(o.points[n] == o.points[n - 1] * o.points[n - 1] + q(1, 1));
  CHECK_THROWS_AS(orbit_degree_analysis(iterate(square(1), q(1, 3), 100, 8), SubfieldSpec::rationals(1)),
                  std::invalid_argument);
}

TEST_CASE("orbit degrees") {
  auto d = orbit_degree_analysis(iterate(square(16), z(16), 12), SubfieldSpec::rationals(16));
  CHECK(std::vector<std::size_t>(d.degrees.begin(), d.degrees.begin() + 6) ==
        std::vector<std::size_t>{8, 4, 2, 1, 1, 1});
  CHECK(d.cert.N <= 3);
  CHECK(d.cert.r == 1);

  d = orbit_degree_analysis(iterate(CycPoly(3, {q(3, 0), z(3)}), q(3, 1), 11), SubfieldSpec::rationals(3));
  for (std::size_t n = 0; n < d.degrees.size(); ++n) CHECK(d.degrees[n] == (n % 3 == 0 ? 1U : 2U));
  CHECK(d.cert.r == 3);

  d = orbit_degree_analysis(iterate(CycPoly(1, {q(1, 1), q(1, 1)}), q(1, 0), 10), SubfieldSpec::rationals(1));
  CHECK(d.degrees == std::vector<std::size_t>(11, 1));
  CHECK(d.cert.r == 1);
}

TEST_CASE("diagonal fixedness") {
  auto df = diagonal_fixedness(CycPoly(1, {q(1, 2), q(1, -1), q(1, 1)}), q(1, -1), GaloisAuto(1, 1), 8);
  for (bool b : df.pattern) CHECK(b);

  df = diagonal_fixedness(CycPoly(3, {q(3, 0), z(3)}), q(3, 1), GaloisAuto(3, 2), 11);
  for (std::size_t n = 0; n < df.pattern.size(); ++n) CHECK(df.pattern[n] == (n % 3 == 0));
  REQUIRE(df.cert);
  CHECK(df.cert->r == 3);
  CHECK(df.equivariant);

  df = diagonal_fixedness(square(16), z(16), GaloisAuto(16, 15), 10);
  for (std::size_t n = 0; n < df.pattern.size(); ++n) CHECK(df.pattern[n] == (n >= 3));
  CHECK(df.equivariant);
}

TEST_CASE("equivariance and agreement with stabilizers") {
  const std::size_t m = 12;
  const std::vector<CycPoly> maps = {
      square(m),
      CycPoly(m, {z(m, 3), q(m, 0), q(m, 1)}),
      CycPoly(m, {q(m, 0), z(m, 4) + z(m, 1), q(m, 0), z(m, 5)}),
      CycPoly(m, {q(m, 1), z(m, 2)}),
  };
  const std::vector<CycElem> seeds = {z(m), q(m, 1) + z(m, 3), z(m, 4) - q(m, 1)};
  const auto qq = SubfieldSpec::rationals(m);
  for (const auto& f : maps)
    for (const auto& a : seeds) {
      const auto orbit = iterate(f, a, 7, 20000);
      for (std::size_t t : units_mod(m)) {
        const GaloisAuto sigma(m, t);
        const auto df = diagonal_fixedness(f, a, sigma, 7, 20000);
        CHECK(df.equivariant);
        // Direct check of the identity, orbit point by orbit point.
        const auto twisted = iterate(apply_auto(sigma, f), apply_auto(sigma, a), orbit.points.size() - 1, 20000);
        for (std::size_t n = 0; n < std::min(orbit.points.size(), twisted.points.size()); ++n) {
          CHECK(apply_auto(sigma, orbit.points[n]) == twisted.points[n]);
          const auto stab = stabilizer(orbit.points[n], qq);
          if (n < df.pattern.size())
            CHECK(df.pattern[n] == (std::find(stab.begin(), stab.end(), t) != stab.end()));
        }
      }
    }
}
