#pragma once

// Exact arithmetic in the cyclotomic field Q(zeta_m).
//
// Elements are stored in the power basis 1, z, ..., z^(phi(m)-1) with one
// GMP rational per coordinate.  Every arithmetic result is reduced modulo the
// m-th cyclotomic polynomial, so equality of elements is coordinate equality.
// The Galois group is (Z/m)^*, acting by z -> z^t; subfields are named by the
// subgroup of (Z/m)^* that fixes them.

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace galdeg {

using Integer = mpz_class;
using Rational = mpq_class;

/// Integer polynomial, coefficients from the constant term upward.
using IntPoly = std::vector<Integer>;

class ModulusMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ZeroDivision : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

std::size_t euler_phi(std::size_t m);

/// Sorted residues t in [1, m) coprime to m; {1} for m <= 2.
std::vector<std::size_t> units_mod(std::size_t m);

/// The m-th cyclotomic polynomial, monic of degree phi(m).
IntPoly cyclotomic_polynomial(std::size_t m);

class CycElem {
 public:
  /// Zero of Q(zeta_m).
  explicit CycElem(std::size_t m = 1);
  CycElem(std::size_t m, const Rational& q);
  /// Coefficients of an arbitrary polynomial in zeta_m; reduced on construction.
  CycElem(std::size_t m, std::vector<Rational> coeffs);

  static CycElem zeta(std::size_t m, std::size_t power = 1);

  std::size_t modulus() const { return m_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  /// Coordinate at 1; the value itself when is_rational().
  const Rational& constant_term() const { return c_.front(); }

  CycElem& operator+=(const CycElem& o);
  CycElem& operator-=(const CycElem& o);
  CycElem& operator*=(const CycElem& o);
  CycElem& operator*=(const Rational& q);

  friend CycElem operator+(CycElem a, const CycElem& b) { return a += b; }
  friend CycElem operator-(CycElem a, const CycElem& b) { return a -= b; }
  friend CycElem operator*(const CycElem& a, const CycElem& b);
  friend CycElem operator*(CycElem a, const Rational& q) { return a *= q; }
  CycElem operator-() const;

  friend bool operator==(const CycElem& a, const CycElem& b) {
    return a.m_ == b.m_ && a.c_ == b.c_;
  }

  CycElem pow(unsigned long e) const;

  /// Largest bit size among all numerators and denominators.
  std::size_t max_bits() const;

  /// Human-readable form, e.g. "1 + 2*zeta" or "-1/3 - 2/3*zeta".
  std::string to_string() const;

 private:
  std::size_t m_;
  std::vector<Rational> c_;
};

CycElem inverse(const CycElem& a);
CycElem operator/(const CycElem& a, const CycElem& b);

/// sigma_t : zeta_m -> zeta_m^t.
class GaloisAuto {
 public:
  GaloisAuto(std::size_t m, std::size_t t);
  static GaloisAuto identity(std::size_t m) { return {m, 1}; }

  std::size_t modulus() const { return m_; }
  std::size_t exponent() const { return t_; }

  /// (this o other)(x) = this(other(x)).
  GaloisAuto compose(const GaloisAuto& other) const;
  GaloisAuto inverse() const;

  friend bool operator==(const GaloisAuto&, const GaloisAuto&) = default;

 private:
  std::size_t m_;
  std::size_t t_;
};

CycElem apply_auto(const GaloisAuto& sigma, const CycElem& a);
/// Shorthand for apply_auto(GaloisAuto(a.modulus(), t), a).
CycElem apply_auto(std::size_t t, const CycElem& a);

/// A base field K inside Q(zeta_m), given as the subgroup H_K of (Z/m)^*
/// that fixes it.  The full group gives K = Q, the trivial group K = Q(zeta_m).
class SubfieldSpec {
 public:
  SubfieldSpec(std::size_t m, std::vector<std::size_t> generators);

  static SubfieldSpec rationals(std::size_t m);
  static SubfieldSpec whole_field(std::size_t m);

  std::size_t modulus() const { return m_; }
  const std::vector<std::size_t>& generators() const { return gens_; }
  /// Sorted elements of H_K.
  const std::vector<std::size_t>& group() const { return group_; }
  std::size_t group_order() const { return group_.size(); }
  bool contains(std::size_t t) const;
  bool is_rationals() const { return group_.size() == euler_phi(m_); }

 private:
  std::size_t m_;
  std::vector<std::size_t> gens_;
  std::vector<std::size_t> group_;
};

/// Closure of `generators` under multiplication mod m (always contains 1).
std::vector<std::size_t> generate_subgroup(std::size_t m, const std::vector<std::size_t>& generators);
bool is_subgroup(std::size_t m, const std::vector<std::size_t>& elems);

/// {t in H_K : sigma_t(a) = a}, sorted.
std::vector<std::size_t> stabilizer(const CycElem& a, const SubfieldSpec& k);

/// [K(a) : K] = |H_K| / |stabilizer(a, K)|.
std::size_t degree(const CycElem& a, const SubfieldSpec& k);

/// Order n of a as a root of unity, if a is one.  Throws ZeroDivision on 0.
std::optional<std::size_t> root_of_unity_order(const CycElem& a);

/// A square root inside Q(zeta_m) when one exists.
///
/// Candidates come from high-precision embeddings; every returned value is
/// verified exactly.  Throws std::domain_error when phi(m) is too large for
/// the sign search.
std::optional<CycElem> square_root(const CycElem& a);

/// Absolute trace Tr_{Q(zeta_m)/Q}(a).
Rational trace(const CycElem& a);

/// Values of a at exp(2 pi i t / m) for each unit t (ascending), evaluated
/// with `precision_bits` of working precision and rounded to double.
std::vector<std::complex<double>> complex_embeddings(const CycElem& a, unsigned precision_bits = 128);

/// Polynomial in one variable with coefficients in Q(zeta_m), constant term
/// first, trailing zeros trimmed.
class CycPoly {
 public:
  explicit CycPoly(std::size_t m = 1) : m_(m) {}
  CycPoly(std::size_t m, std::vector<CycElem> coeffs);

  static CycPoly constant(const CycElem& c);
  /// x^n.
  static CycPoly monomial(std::size_t m, std::size_t n);

  std::size_t modulus() const { return m_; }
  const std::vector<CycElem>& coeffs() const { return c_; }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  /// Coefficient of x^i, zero beyond the degree.
  CycElem coeff(std::size_t i) const;
  const CycElem& leading() const { return c_.back(); }

  CycPoly& operator+=(const CycPoly& o);
  CycPoly& operator-=(const CycPoly& o);
  friend CycPoly operator+(CycPoly a, const CycPoly& b) { return a += b; }
  friend CycPoly operator-(CycPoly a, const CycPoly& b) { return a -= b; }
  friend CycPoly operator*(const CycPoly& a, const CycPoly& b);
  friend CycPoly operator*(CycPoly a, const CycElem& c);
  friend bool operator==(const CycPoly&, const CycPoly&) = default;

  CycElem operator()(const CycElem& x) const;

  /// Drops all terms of degree >= n.
  CycPoly truncated(std::size_t n) const;
  /// x^deg * p(1/x) for the given deg (>= degree()).
  CycPoly reversed(std::size_t deg) const;
  CycPoly monic() const;

  std::string to_string(const std::string& var = "T") const;

 private:
  void trim();
  std::size_t m_;
  std::vector<CycElem> c_;
};

struct PolyDivision {
  CycPoly quotient;
  CycPoly remainder;
};

PolyDivision divmod(const CycPoly& a, const CycPoly& b);
/// Monic greatest common divisor; zero only when both inputs are zero.
CycPoly gcd(const CycPoly& a, const CycPoly& b);
CycPoly apply_auto(const GaloisAuto& sigma, const CycPoly& f);

/// Product of (T - c) over the distinct conjugates c = sigma_t(a), t in H_K.
/// Monic, of degree degree(a, K), with coefficients fixed by H_K.
CycPoly minimal_polynomial(const CycElem& a, const SubfieldSpec& k);

/// Product of (T - sigma_t(a)) over all t in H_K, repeats included; a power
/// of the minimal polynomial, of degree |H_K|.  Its constant term is
/// (-1)^|H_K| times the norm from Q(zeta_m) to K.
CycPoly characteristic_polynomial(const CycElem& a, const SubfieldSpec& k);

}  // namespace galdeg
