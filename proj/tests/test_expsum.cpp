#include <doctest.h>

#include <numeric>

#include "galdeg/expsum.hpp"

using namespace galdeg;

namespace {

CycElem z(std::size_t m, std::size_t e = 1) { return CycElem::zeta(m, e); }
CycElem q(std::size_t m, long v) { return CycElem(m, Rational(v)); }

MultiPoly poly(std::size_t n, std::vector<Monomial> t) { return MultiPoly(n, std::move(t)); }

// Straight enumeration through FqElem arithmetic, independent of the kernels.
CycElem naive_sum(const MultiPoly& f, Residue p, unsigned k, std::optional<FpPoly> modulus = std::nullopt) {
  const auto cfg = FqConfig::create(p, k, modulus);
  const std::size_t n = f.num_vars();
  std::vector<FqElem> elems;
  for (const auto& a : enumerate(cfg)) elems.push_back(a);
  std::vector<std::uint64_t> tally(p, 0);
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    FqElem v(cfg);
    for (const auto& m : f.terms()) {
      FqElem t = FqElem::constant(cfg, m.coeff);
      for (std::size_t i = 0; i < n; ++i) t = t * elems[idx[i]].pow(m.exponents[i]);
      v = v + t;
    }
    ++tally[v.trace()];
    std::size_t i = 0;
    while (i < n && ++idx[i] == elems.size()) idx[i++] = 0;
    if (i == n) break;
  }
  CycElem s(p);
  for (Residue c = 0; c < p; ++c) s = s + CycElem(p, Rational(static_cast<unsigned long>(tally[c]))) * z(p, c);
  return s;
}

CycElem naive_kloosterman(unsigned n, std::int64_t a, Residue p, unsigned k) {
  const auto cfg = FqConfig::create(p, k);
  std::vector<FqElem> units;
  for (const auto& x : enumerate(cfg))
    if (!x.is_zero()) units.push_back(x);
  const auto ca = FqElem::constant(cfg, a);
  CycElem s(p);
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    FqElem sum(cfg), prod = FqElem::constant(cfg, 1);
    for (std::size_t i = 0; i < n; ++i) {
      sum = sum + units[idx[i]];
      prod = prod * units[idx[i]];
    }
    s = s + z(p, (sum + ca * prod.inverse()).trace());
    std::size_t i = 0;
    while (i < n && ++idx[i] == units.size()) idx[i++] = 0;
    if (i == n) break;
  }
  return s;
}

}  // namespace

TEST_CASE("MultiPoly normalisation") {
  const auto f = poly(2, {{1, {1, 1}}, {2, {1, 1}}, {0, {2, 0}}, {5, {0, 3}}});
  CHECK(f.terms().size() == 2);
  CHECK(f.total_degree() == 3);
  CHECK(f.reduced(3).terms().size() == 1);
  CHECK(f.reduced(5).terms().size() == 1);
  CHECK(f.reduced(3).terms().front().exponents == std::vector<unsigned>{0, 3});
  CHECK_THROWS(MultiPoly(2, {{1, {1}}}));
}

TEST_CASE("exponential sum examples") {
  CHECK(exp_sum(poly(1, {}), 5, 3) == q(5, 125));
  CHECK(exp_sum(MultiPoly::monomial(2), 3, 1) == q(3, 1) + q(3, 2) * z(3));
  CHECK(exp_sum(MultiPoly::monomial(2), 3, 2) == q(3, 3));
  CHECK(exp_sum(MultiPoly::monomial(1), 7, 2) == q(7, 0));
}

TEST_CASE("quadratic sums follow Hasse-Davenport") {
  for (Residue p : {3U, 5U, 7U, 11U}) {
    const auto s1 = exp_sum(MultiPoly::monomial(2), p, 1);
    for (unsigned k = 1; k <= 5; ++k) {
      if (std::pow(double(p), k) > 2e5) break;
      CHECK(exp_sum(MultiPoly::monomial(2), p, k) == -(-s1).pow(k));
    }
  }
}

TEST_CASE("kernels agree with naive enumeration") {
  const std::vector<MultiPoly> fs = {
      MultiPoly::monomial(3),
      MultiPoly::monomial(4, 2),
      poly(1, {{1, {3}}, {1, {1}}}),
      poly(2, {{1, {1, 1}}}),
      poly(2, {{1, {2, 0}}, {3, {0, 2}}, {1, {1, 0}}}),
      poly(3, {{1, {1, 1, 1}}, {1, {2, 0, 0}}}),
  };
  for (const auto& f : fs)
    for (Residue p : {3U, 5U, 7U})
      for (unsigned k = 1; k <= 3; ++k) {
        if (std::pow(double(p), double(k * f.num_vars())) > 4e4) continue;
        CAPTURE(p);
        CAPTURE(k);
        const auto want = naive_sum(f, p, k);
        CHECK(exp_sum(f, p, k) == want);
        SumOptions generic;
        generic.monomial_walk = false;
        CHECK(exp_sum(f, p, k, generic) == want);
      }
}

TEST_CASE("Kloosterman sums") {
  CHECK(kloosterman_sum(1, 1, 3, 1) == q(3, -1));
  CHECK(kloosterman_sum(1, 1, 5, 1) == q(5, 2) + z(5, 2) + z(5, 3));
  CHECK(degree(kloosterman_sum(1, 1, 5, 1), SubfieldSpec::rationals(5)) == 2);
  CHECK_THROWS_AS(kloosterman_sum(1, 0, 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(kloosterman_sum(1, 10, 5, 1), std::invalid_argument);
  for (auto [n, a, p, k] : std::vector<std::tuple<unsigned, int, Residue, unsigned>>{
           {1, 1, 5, 2}, {1, 3, 7, 2}, {2, 1, 5, 2}, {2, 2, 7, 1}, {3, 1, 5, 1}, {1, 2, 3, 3}}) {
    CAPTURE(n);
    CAPTURE(p);
    CAPTURE(k);
    CHECK(kloosterman_sum(n, a, p, k) == naive_kloosterman(n, a, p, k));
  }
  // Kl_k(1, a) is real: conjugation fixes it.
  const auto kl = kloosterman_sum(1, 2, 7, 3);
  CHECK(apply_auto(6, kl) == kl);
}

TEST_CASE("Galois closure") {
  // sigma_t moves zeta to zeta^t, which is the same as summing t*f.
  const auto f = poly(1, {{1, {3}}, {2, {1}}});
  for (Residue p : {5U, 7U})
    for (unsigned k = 1; k <= 3; ++k) {
      const auto s = exp_sum(f, p, k);
      for (std::size_t t : units_mod(p)) {
        std::vector<Monomial> scaled;
        for (auto m : f.terms()) scaled.push_back({m.coeff * static_cast<std::int64_t>(t), m.exponents});
        CHECK(apply_auto(t, s) == exp_sum(MultiPoly(1, scaled), p, k));
      }
    }
}

TEST_CASE("modulus independence") {
  for (unsigned k = 2; k <= 4; ++k) {
    std::vector<FpPoly> irr;
    FpPoly f(k + 1, 0);
    f[k] = 1;
    for (std::uint64_t code = 0; code < std::uint64_t(std::pow(5, k)) && irr.size() < 3; ++code) {
      std::uint64_t c = code;
      for (unsigned i = 0; i < k; ++i, c /= 5) f[i] = static_cast<Residue>(c % 5);
      if (is_irreducible(f, 5)) irr.push_back(f);
    }
    REQUIRE(irr.size() >= 2);
    for (const auto& g : {MultiPoly::monomial(3), poly(1, {{1, {4}}, {3, {2}}, {1, {1}}})}) {
      SumOptions a, b;
      a.modulus = irr[0];
      b.modulus = irr.back();
      CHECK(exp_sum(g, 5, k, a) == exp_sum(g, 5, k, b));
      CHECK(exp_sum(g, 5, k, b) == naive_sum(g, 5, k, irr.back()));
    }
  }
}

TEST_CASE("thread count does not change tallies") {
  const auto f = poly(2, {{1, {3, 0}}, {1, {1, 2}}});
  SumOptions one;
  const auto base = exp_sum_tally(f, 7, 2, one);
  const auto kbase = kloosterman_tally(2, 3, 7, 2, one);
  const auto mbase = exp_sum_tally(MultiPoly::monomial(3), 7, 4, one);
  for (unsigned t : {2U, 4U, 8U}) {
    SumOptions o;
    o.threads = t;
    CHECK(exp_sum_tally(f, 7, 2, o) == base);
    CHECK(kloosterman_tally(2, 3, 7, 2, o) == kbase);
    CHECK(exp_sum_tally(MultiPoly::monomial(3), 7, 4, o) == mbase);
  }
  CHECK(std::accumulate(base.begin(), base.end(), std::uint64_t{0}) == 7 * 7 * 7 * 7);
}

TEST_CASE("budget") {
  SumOptions o;
  o.budget = 100;
  CHECK_THROWS_AS(exp_sum(MultiPoly::monomial(2), 5, 3, o), BudgetExceeded);
  CHECK_NOTHROW(exp_sum(MultiPoly::monomial(2), 5, 2, o));
  CHECK_THROWS_AS(kloosterman_sum(3, 1, 11, 1, o), BudgetExceeded);
  CHECK_NOTHROW(kloosterman_sum(2, 1, 11, 1, o));
  CHECK_THROWS(exp_sum(MultiPoly::monomial(2), 9, 1));
}

TEST_CASE("degree formulas") {
  CHECK(gauss_degree_formula(7, 3, 3) == 1);
  CHECK(gauss_degree_formula(7, 3, 1) == 3);
  CHECK(gauss_degree_formula(5, 4, 6) == 2);
  CHECK_THROWS_AS(gauss_degree_formula(7, 4, 1), std::domain_error);
  CHECK(kloosterman_degree_formula(5, 1) == 2);
  CHECK(kloosterman_degree_formula(3, 1) == 1);
  CHECK(kloosterman_degree_formula(7, 2) == 2);
}

TEST_CASE("degree sequences") {
  const auto qq7 = SubfieldSpec::rationals(7);
  CHECK(degree_sequence(MultiPoly::monomial(3), 7, 6, qq7) == std::vector<std::size_t>{3, 3, 1, 3, 3, 1});
  CHECK(degree_sequence(MultiPoly::monomial(5), 7, 6, qq7) == std::vector<std::size_t>(6, 1));
  CHECK(degree_sequence(poly(1, {}), 5, 4, SubfieldSpec::rationals(5)) == std::vector<std::size_t>(4, 1));
  const auto d = degree_sequence(MultiPoly::monomial(4), 13, 4, SubfieldSpec::rationals(13));
  for (unsigned k = 1; k <= 4; ++k) CHECK(d[k - 1] == gauss_degree_formula(13, 4, k));
  // p = 2 is accepted and always rational.
  for (unsigned k = 1; k <= 5; ++k) CHECK(exp_sum(poly(1, {{1, {3}}, {1, {1}}}), 2, k).is_rational());
}

TEST_CASE("Weil bound") {
  for (Residue p : {5U, 7U, 11U})
    for (unsigned d : {2U, 3U, 4U})
      for (unsigned k = 1; k <= 3; ++k) {
        const auto s = exp_sum(poly(1, {{1, {d}}, {1, {1}}}), p, k);
        const auto w = weil_bound_check(s, d, p, k);
        CHECK(w.holds);
        CHECK(w.max_abs <= w.bound + 1e-6);
      }
  // Gauss sums attain it: |S_1(x^2)| = sqrt(p).
  const auto w = weil_bound_check(exp_sum(MultiPoly::monomial(2), 11, 1), 2, 11, 1);
  CHECK(w.max_abs == doctest::Approx(std::sqrt(11.0)));
}
