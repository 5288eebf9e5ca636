#pragma once

// Exponential sums over finite fields, computed exactly in Z[zeta_p].
//
//   S_k(f)     = sum over x in (F_{p^k})^n of zeta_p^Tr(f(x))
//   Kl_k(n, a) = sum over x in (F*_{p^k})^n of zeta_p^Tr(x_1 + ... + x_n + a/(x_1...x_n))
//
// Both sums are accumulated as a tally of trace values (how often each
// residue of F_p occurs) and converted to a cyclotomic integer once at the end.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "galdeg/cyclotomic.hpp"
#include "galdeg/finitefield.hpp"

namespace galdeg {

struct Monomial {
  std::int64_t coeff = 0;
  std::vector<unsigned> exponents;
};

/// Polynomial in n variables with integer coefficients, read mod p when summed.
class MultiPoly {
 public:
  /// Merges repeated exponent vectors and drops zero coefficients.
  MultiPoly(std::size_t nvars, std::vector<Monomial> terms);

  std::size_t num_vars() const { return n_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree; 0 for constants and the zero polynomial.
  unsigned total_degree() const;

  /// Terms with coefficients reduced into [0, p), zero terms removed.
  MultiPoly reduced(Residue p) const;

  /// x^d in one variable.
  static MultiPoly monomial(unsigned d, std::int64_t coeff = 1);

 private:
  std::size_t n_;
  std::vector<Monomial> terms_;
};

struct SumOptions {
  std::uint64_t budget = kDefaultEnumerationBudget;
  unsigned threads = 1;
  /// Explicit irreducible modulus for F_{p^k}; the default is find_irreducible(p, k).
  std::optional<FpPoly> modulus;
  /// Use the multiplicative walk for one-variable monomials c*x^d.
  bool monomial_walk = true;
};

/// Counts N_c of points whose trace value is c, for c = 0..p-1.
using TraceTally = std::vector<std::uint64_t>;

/// sum_c N_c zeta_p^c as an element of Q(zeta_p).
CycElem cyclotomic_from_tally(std::span<const std::uint64_t> tally, Residue p);

TraceTally exp_sum_tally(const MultiPoly& f, Residue p, unsigned k, const SumOptions& opts = {});
CycElem exp_sum(const MultiPoly& f, Residue p, unsigned k, const SumOptions& opts = {});

TraceTally kloosterman_tally(unsigned n, std::int64_t a, Residue p, unsigned k, const SumOptions& opts = {});
CycElem kloosterman_sum(unsigned n, std::int64_t a, Residue p, unsigned k, const SumOptions& opts = {});

/// [degree(S_1(f), K), ..., degree(S_kmax(f), K)].
std::vector<std::size_t> degree_sequence(const MultiPoly& f, Residue p, unsigned k_max, const SubfieldSpec& base,
                                         const SumOptions& opts = {});

/// d / gcd(d, k), valid when p = 1 mod d and gcd(d, p) = 1; throws
/// std::domain_error otherwise.
std::size_t gauss_degree_formula(Residue p, unsigned d, unsigned k);

/// (p - 1) / gcd(n + 1, p - 1).  The value is only known to equal the degree
/// of Kl_k(n, a) when p does not divide k; callers decide applicability.
std::size_t kloosterman_degree_formula(Residue p, unsigned n);

struct WeilCheck {
  double max_abs = 0;  // largest |embedding| of the sum
  double bound = 0;    // (d - 1) p^(k/2)
  bool holds = false;
};

/// Classical bound for one-variable f of degree d prime to p.
WeilCheck weil_bound_check(const CycElem& sum, unsigned d, Residue p, unsigned k, double tolerance = 1e-6);

}  // namespace galdeg
