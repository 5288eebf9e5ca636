#pragma once

// Eventual-period search shared by the periodicity and zero-set code.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>

namespace galdeg {

/// Terms are indexed first_index, first_index + 1, ...; the sequence is
/// claimed periodic with period r for every index n > N.
struct PeriodCertificate {
  std::size_t N = 0;
  std::size_t r = 1;
  std::size_t horizon = 0;
  std::size_t first_index = 0;
  bool exact = false;

  friend bool operator==(const PeriodCertificate&, const PeriodCertificate&) = default;
};

/// Smallest N + r (then smaller r) such that term(n + r) = term(n) for all
/// checked n > N and at least `min_periods` full periods lie beyond N.
template <class T>
std::optional<PeriodCertificate> find_virtual_period(std::span<const T> terms, std::size_t first_index = 0,
                                                     std::size_t min_periods = 2) {
  const std::size_t m = terms.size();
  if (m == 0) return std::nullopt;
  const std::size_t last = first_index + m - 1;
  auto at = [&](std::size_t n) -> const T& { return terms[n - first_index]; };
  for (std::size_t s = 1; s <= last + 1; ++s) {
    for (std::size_t r = 1; r <= s; ++r) {
      const std::size_t n0 = s - r;
      if (n0 >= last || last - n0 < min_periods * r) continue;
      bool ok = true;
      for (std::size_t n = std::max(n0 + 1, first_index); n + r <= last && ok; ++n) ok = at(n + r) == at(n);
      if (ok) return PeriodCertificate{n0, r, m, first_index, false};
    }
  }
  return std::nullopt;
}

}  // namespace galdeg
