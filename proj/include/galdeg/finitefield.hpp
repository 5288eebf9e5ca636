#pragma once

// The finite field F_{p^k} modelled as F_p[x]/(f) for a monic irreducible f.

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace galdeg {

using Residue = std::uint32_t;

/// Polynomial over F_p, constant term first.
using FpPoly = std::vector<Residue>;

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 100'000'000;

/// Largest characteristic accepted; keeps per-element tallies in 16 bits.
inline constexpr Residue kMaxCharacteristic = 65521;

bool is_irreducible(const FpPoly& f, Residue p);

/// The monic irreducible x^k + c_{k-1} x^{k-1} + ... + c_0 whose tuple
/// (c_{k-1}, ..., c_0) is lexicographically smallest.
FpPoly find_irreducible(Residue p, unsigned k);

class FqConfig;
using FqConfigPtr = std::shared_ptr<const FqConfig>;

class FqConfig {
 public:
  /// Validates p (prime) and the modulus (monic, degree k, irreducible).
  /// Without an explicit modulus, find_irreducible(p, k) is used.
  static FqConfigPtr create(Residue p, unsigned k, std::optional<FpPoly> modulus = std::nullopt);

  Residue p() const { return p_; }
  unsigned k() const { return k_; }
  const FpPoly& modulus() const { return modulus_; }
  /// p^k.
  std::uint64_t order() const { return order_; }

  /// out = a * b mod modulus; all spans have length k, out may alias neither.
  void mul(std::span<const Residue> a, std::span<const Residue> b, std::span<Residue> out) const;
  /// Tr(a) as a residue, via the precomputed values Tr(x^i).
  Residue trace(std::span<const Residue> a) const;
  const std::vector<Residue>& trace_of_basis() const { return trace_basis_; }

 private:
  FqConfig(Residue p, unsigned k, FpPoly modulus);
  Residue p_;
  unsigned k_;
  FpPoly modulus_;
  std::uint64_t order_;
  std::vector<Residue> trace_basis_;
};

class FqElem {
 public:
  explicit FqElem(FqConfigPtr cfg);  // zero
  FqElem(FqConfigPtr cfg, std::vector<Residue> coeffs);
  static FqElem constant(FqConfigPtr cfg, std::int64_t c);
  /// The class of x in F_p[x]/(f).
  static FqElem generator_x(FqConfigPtr cfg);

  const FqConfigPtr& config() const { return cfg_; }
  const std::vector<Residue>& coeffs() const { return c_; }
  bool is_zero() const;

  FqElem operator+(const FqElem& o) const;
  FqElem operator-(const FqElem& o) const;
  FqElem operator*(const FqElem& o) const;
  FqElem operator-() const;
  FqElem pow(std::uint64_t e) const;
  /// Throws ZeroDivision-style std::domain_error for zero.
  FqElem inverse() const;
  friend bool operator==(const FqElem& a, const FqElem& b) { return a.cfg_ == b.cfg_ && a.c_ == b.c_; }

  Residue trace() const { return cfg_->trace(c_); }

 private:
  void check(const FqElem& o) const;
  FqConfigPtr cfg_;
  std::vector<Residue> c_;
};

/// All p^k elements, coordinate vectors in lexicographic order (c_0 most
/// significant).
class ElementRange {
 public:
  class iterator {
   public:
    using value_type = FqElem;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    iterator(FqConfigPtr cfg, std::uint64_t index);
    FqElem operator*() const { return FqElem(cfg_, digits_); }
    iterator& operator++();
    iterator operator++(int) {
      auto tmp = *this;
      ++*this;
      return tmp;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.index_ == b.index_; }

   private:
    FqConfigPtr cfg_;
    std::uint64_t index_ = 0;
    std::vector<Residue> digits_;
  };

  explicit ElementRange(FqConfigPtr cfg) : cfg_(std::move(cfg)) {}
  iterator begin() const { return iterator(cfg_, 0); }
  iterator end() const { return iterator(cfg_, cfg_->order()); }
  std::uint64_t size() const { return cfg_->order(); }

 private:
  FqConfigPtr cfg_;
};

/// Throws BudgetExceeded when p^k > budget.
ElementRange enumerate(const FqConfigPtr& cfg, std::uint64_t budget = kDefaultEnumerationBudget);

/// First element (in enumeration order) that generates the multiplicative group.
FqElem primitive_element(const FqConfigPtr& cfg);

}  // namespace galdeg
