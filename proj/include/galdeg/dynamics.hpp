#pragma once

// Orbits of one-variable polynomials over Q(zeta_m) and their Galois data.

#include <cstddef>
#include <optional>
#include <vector>

#include "galdeg/cyclotomic.hpp"
#include "galdeg/period_fit.hpp"

namespace galdeg {

inline constexpr std::size_t kDefaultSizeBudgetBits = 1'000'000;

struct OrbitRecord {
  std::vector<CycElem> points;  // f^(0)(a) = a, f^(1)(a), ...
  std::vector<std::size_t> bits;
  /// Stopped early because a coefficient outgrew the size budget.
  bool truncated = false;
};

/// Points n = 0..n_max, stopping before any point whose numerators or
/// denominators exceed size_budget_bits.
OrbitRecord iterate(const CycPoly& f, const CycElem& a, std::size_t n_max,
                    std::size_t size_budget_bits = kDefaultSizeBudgetBits);

struct OrbitDegrees {
  std::vector<std::size_t> degrees;
  PeriodCertificate cert;
};

/// Needs at least 6 points.
OrbitDegrees orbit_degree_analysis(const OrbitRecord& record, const SubfieldSpec& base);

struct DiagonalFixedness {
  /// pattern[n] = [f^(n)(a) = sigma(f)^(n)(sigma(a))].
  std::vector<bool> pattern;
  std::optional<PeriodCertificate> cert;
  bool truncated = false;
  /// sigma(f^(n)(a)) = sigma(f)^(n)(sigma(a)) at every computed n.
  bool equivariant = true;
};

DiagonalFixedness diagonal_fixedness(const CycPoly& f, const CycElem& a, const GaloisAuto& sigma, std::size_t n_max,
                                     std::size_t size_budget_bits = kDefaultSizeBudgetBits);

}  // namespace galdeg
