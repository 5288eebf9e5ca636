// Complex embeddings of Q(zeta_m) and the square-root search built on them.

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "bigfloat.hpp"

namespace galdeg {

namespace detail {

BigComplex embed(const CycElem& a, std::size_t t, mpfr_prec_t prec) {
  const std::size_t m = a.modulus();
  BigComplex acc(prec);
  BigFloat two_pi(prec), angle(prec), c(prec), s(prec), coeff(prec), term(prec);
  mpfr_const_pi(two_pi.get(), MPFR_RNDN);
  mpfr_mul_ui(two_pi.get(), two_pi.get(), 2, MPFR_RNDN);
  const auto& q = a.coeffs();
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (sgn(q[j]) == 0) continue;
    mpfr_set_q(coeff.get(), q[j].get_mpq_t(), MPFR_RNDN);
    const std::size_t e = (t * j) % m;
    if (e == 0) {
      mpfr_add(acc.re.get(), acc.re.get(), coeff.get(), MPFR_RNDN);
      continue;
    }
    mpfr_mul_ui(angle.get(), two_pi.get(), e, MPFR_RNDN);
    mpfr_div_ui(angle.get(), angle.get(), m, MPFR_RNDN);
    mpfr_sin_cos(s.get(), c.get(), angle.get(), MPFR_RNDN);
    mpfr_mul(term.get(), coeff.get(), c.get(), MPFR_RNDN);
    mpfr_add(acc.re.get(), acc.re.get(), term.get(), MPFR_RNDN);
    mpfr_mul(term.get(), coeff.get(), s.get(), MPFR_RNDN);
    mpfr_add(acc.im.get(), acc.im.get(), term.get(), MPFR_RNDN);
  }
  return acc;
}

BigFloat abs(const BigComplex& z) {
  BigFloat r(z.re.prec());
  mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDN);
  return r;
}

BigFloat log_abs_embedding(const CycElem& a, std::size_t t, mpfr_prec_t prec) {
  BigFloat r = abs(embed(a, t, prec));
  mpfr_log(r.get(), r.get(), MPFR_RNDN);
  return r;
}

}  // namespace detail

std::vector<std::complex<double>> complex_embeddings(const CycElem& a, unsigned precision_bits) {
  const auto prec = static_cast<mpfr_prec_t>(std::max(precision_bits, 16U));
  std::vector<std::complex<double>> out;
  for (std::size_t t : units_mod(a.modulus())) {
    auto z = detail::embed(a, t, prec);
    out.emplace_back(z.re.to_double(), z.im.to_double());
  }
  return out;
}

namespace {

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  return Rational(n, d);
}

// Solves G x = rhs exactly; G is square and nonsingular.
std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> g, std::vector<Rational> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(g[piv][col]) == 0) ++piv;
    if (piv == n) throw std::logic_error("trace form is singular");
    std::swap(g[piv], g[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(g[r][col]) == 0) continue;
      const Rational f = g[r][col] / g[col][col];
      for (std::size_t c = col; c < n; ++c) g[r][c] -= f * g[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) rhs[i] /= g[i][i];
  return rhs;
}

// Rounds x to the nearest integer if it lies within 1/4 of one.
std::optional<Integer> near_integer(const detail::BigFloat& x) {
  detail::BigFloat r(x.prec()), diff(x.prec());
  mpfr_round(r.get(), x.get());
  mpfr_sub(diff.get(), x.get(), r.get(), MPFR_RNDN);
  if (mpfr_cmp_d(diff.get(), 0.25) > 0 || mpfr_cmp_d(diff.get(), -0.25) < 0) return std::nullopt;
  Integer z;
  mpfr_get_z(z.get_mpz_t(), r.get(), MPFR_RNDN);
  return z;
}

constexpr std::size_t kMaxSignBits = 20;

}  // namespace

std::optional<CycElem> square_root(const CycElem& a) {
  const std::size_t m = a.modulus();
  if (a.is_zero()) return a;
  if (a.is_rational()) {
    if (auto r = rational_sqrt(a.constant_term())) return CycElem(m, *r);
    if (m <= 2) return std::nullopt;
  }

  // Scale to an algebraic integer: a' = s^2 a has integral coordinates, and
  // any square root of a' lies in Z[zeta_m].
  Integer s = 1;
  for (const auto& q : a.coeffs()) mpz_lcm(s.get_mpz_t(), s.get_mpz_t(), q.get_den_mpz_t());
  const CycElem target = a * Rational(s * s);

  const auto units = units_mod(m);
  const std::size_t phi_m = units.size();
  std::vector<std::size_t> reps;
  for (std::size_t t : units)
    if (t < m - t) reps.push_back(t);
  if (reps.size() - 1 > kMaxSignBits)
    throw std::domain_error("square_root: field degree too large for the embedding sign search");

  const auto prec = static_cast<mpfr_prec_t>(2 * target.max_bits() + 128 + 8 * std::bit_width(m));

  // Square roots of each embedding for t in the half system; the conjugate
  // embedding m - t is the complex conjugate.
  std::vector<detail::BigComplex> roots;
  for (std::size_t t : reps) {
    auto z = detail::embed(target, t, prec);
    detail::BigComplex r(prec);
    detail::BigFloat mod = detail::abs(z);
    mpfr_add(r.re.get(), mod.get(), z.re.get(), MPFR_RNDN);
    mpfr_div_2ui(r.re.get(), r.re.get(), 1, MPFR_RNDN);
    mpfr_sqrt(r.re.get(), r.re.get(), MPFR_RNDN);
    mpfr_sub(r.im.get(), mod.get(), z.re.get(), MPFR_RNDN);
    mpfr_div_2ui(r.im.get(), r.im.get(), 1, MPFR_RNDN);
    mpfr_sqrt(r.im.get(), r.im.get(), MPFR_RNDN);
    if (mpfr_sgn(z.im.get()) < 0) mpfr_neg(r.im.get(), r.im.get(), MPFR_RNDN);
    roots.push_back(std::move(r));
  }

  // Trace form G[k][j] = Tr(zeta^(j-k)).
  std::vector<std::vector<Rational>> gram(phi_m, std::vector<Rational>(phi_m));
  for (std::size_t k = 0; k < phi_m; ++k)
    for (std::size_t j = 0; j < phi_m; ++j) gram[k][j] = trace(CycElem::zeta(m, (j + m - k % m) % m));

  // cos/sin of -2 pi t k / m for all needed (t, k).
  detail::BigFloat two_pi(prec);
  mpfr_const_pi(two_pi.get(), MPFR_RNDN);
  mpfr_mul_ui(two_pi.get(), two_pi.get(), 2, MPFR_RNDN);
  std::vector<detail::BigFloat> cosv, sinv;
  for (std::size_t e = 0; e < m; ++e) {
    detail::BigFloat ang(prec), c(prec), sn(prec);
    mpfr_mul_ui(ang.get(), two_pi.get(), e, MPFR_RNDN);
    mpfr_div_ui(ang.get(), ang.get(), m, MPFR_RNDN);
    mpfr_sin_cos(sn.get(), c.get(), ang.get(), MPFR_RNDN);
    cosv.push_back(std::move(c));
    sinv.push_back(std::move(sn));
  }

  const std::size_t patterns = std::size_t{1} << (reps.size() - 1);
  detail::BigFloat acc(prec), term(prec);
  for (std::size_t mask = 0; mask < patterns; ++mask) {
    std::vector<Rational> traces(phi_m);
    bool ok = true;
    for (std::size_t k = 0; k < phi_m && ok; ++k) {
      // tau_k = sum over units of sigma_t(y) * w^(-t k); pairs (t, m - t)
      // contribute 2 Re(sigma_t(y) * w^(-t k)).
      mpfr_set_zero(acc.get(), 1);
      for (std::size_t i = 0; i < reps.size(); ++i) {
        const bool negate = i > 0 && ((mask >> (i - 1)) & 1U);
        const std::size_t e = (reps[i] * k) % m;
        // Re((x + iy)(cos - i sin)) = x cos + y sin.
        mpfr_mul(term.get(), roots[i].re.get(), cosv[e].get(), MPFR_RNDN);
        if (negate) mpfr_sub(acc.get(), acc.get(), term.get(), MPFR_RNDN);
        else mpfr_add(acc.get(), acc.get(), term.get(), MPFR_RNDN);
        mpfr_mul(term.get(), roots[i].im.get(), sinv[e].get(), MPFR_RNDN);
        if (negate) mpfr_sub(acc.get(), acc.get(), term.get(), MPFR_RNDN);
        else mpfr_add(acc.get(), acc.get(), term.get(), MPFR_RNDN);
      }
      mpfr_mul_2ui(acc.get(), acc.get(), 1, MPFR_RNDN);
      auto z = near_integer(acc);
      if (!z) ok = false;
      else traces[k] = Rational(*z);
    }
    if (!ok) continue;
    auto coords = solve_exact(gram, traces);
    CycElem y(m, std::move(coords));
    if (y * y == target) return y * Rational(Integer(1), s);
  }
  return std::nullopt;
}

}  // namespace galdeg
