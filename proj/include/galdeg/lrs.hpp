#pragma once

// Linear recurrence sequences over Q(zeta_m); Q itself is the case m = 1.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "galdeg/cyclotomic.hpp"

namespace galdeg {

/// a_n = c_1 a_{n-1} + ... + c_m a_{n-m}, seeded with a_0..a_{m-1}.
struct Recurrence {
  std::size_t modulus = 1;
  std::vector<CycElem> coeffs;
  std::vector<CycElem> initial;

  std::size_t order() const { return coeffs.size(); }
  /// 1 - c_1 x - ... - c_m x^m.
  CycPoly connection_polynomial() const;
};

struct InferredRecurrence {
  Recurrence rec;
  /// 2 * order <= number of terms, so the recurrence is the unique minimal one.
  bool confirmed = false;
  std::size_t terms_used = 0;
};

/// Power series quotient num/den.
struct RationalFn {
  CycPoly num;
  CycPoly den;

  /// First `count` coefficients of the expansion; requires den(0) != 0.
  std::vector<CycElem> expand(std::size_t count) const;
  /// Cancels the gcd and scales so that den(0) = 1.
  RationalFn normalized() const;
  friend bool operator==(const RationalFn&, const RationalFn&) = default;
};

/// a_n = sum_i h_i(n) beta_i^n for every n >= valid_from.
struct ClosedForm {
  struct Part {
    CycPoly h;
    CycElem beta;
  };
  std::size_t modulus = 1;
  std::vector<Part> parts;
  std::size_t valid_from = 0;

  CycElem evaluate(std::size_t n) const;
};

enum class Exactness { certified, empirical, undecidable };
std::string to_string(Exactness e);

/// {n : a_n = 0} as exceptional ∪ {n >= start : n mod r in residues}.
struct ZeroSetDescription {
  std::vector<std::size_t> exceptional;
  std::size_t r = 1;
  std::vector<std::size_t> residues;
  std::size_t start = 0;
  Exactness exactness = Exactness::empirical;
  /// Number of terms examined (empirical) or searched exhaustively.
  std::size_t horizon = 0;
  /// False when the empirical fit failed; the zeros are still listed.
  bool consistent = true;
  std::vector<std::size_t> observed_zeros;
  std::string note;

  bool contains(std::size_t n) const;
  bool empty() const { return exceptional.empty() && residues.empty(); }
};

class CharacteristicRootError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ReconstructionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Needs at least two terms of a common modulus.
InferredRecurrence berlekamp_massey(std::span<const CycElem> terms);

/// a_0 .. a_{count-1}.
std::vector<CycElem> sequence_terms(const Recurrence& rec, std::size_t count);
/// The `count` terms following the initial terms.
std::vector<CycElem> extend(const Recurrence& rec, std::size_t count);
/// The `count` terms following `known`, which must hold at least order() terms.
std::vector<CycElem> extend(const Recurrence& rec, std::span<const CycElem> known, std::size_t count);

/// f/g with g = 1 - sum c_i x^i and deg f < deg g, in lowest terms.
RationalFn generating_function(const Recurrence& rec);

InferredRecurrence arithmetic_subsequence(const Recurrence& rec, std::size_t i, std::size_t r, std::size_t count);

struct FieldTerm {
  CycElem coeff;
  std::vector<unsigned> exponents;
};

/// Infers a recurrence for g(a_{1n}, ..., a_{ln}) from `count` terms.
InferredRecurrence polynomial_combination(std::span<const Recurrence> recs, std::span<const FieldTerm> g,
                                          std::size_t count);

struct LFunction {
  RationalFn fn;
  /// deg num + deg den <= M - 2; at M - 1 the bound is saturated.
  bool confirmed = false;
  std::vector<CycElem> series;  // l_0 .. l_M
};

/// exp(sum S_k T^k / k) reconstructed as a rational function from S_1..S_M.
LFunction lfunction_from_sums(std::span<const CycElem> sums);

/// Orders 0..2 only; throws CharacteristicRootError when the roots are not
/// in Q(zeta_m).
ClosedForm closed_form(const Recurrence& rec);

/// Fits an eventually periodic zero pattern to at least 8 terms.
ZeroSetDescription zero_set_empirical(std::span<const CycElem> terms);

/// Exact zero set of an order <= 2 recurrence.
ZeroSetDescription certify_zero_set_order_le2(const Recurrence& rec);

}  // namespace galdeg
