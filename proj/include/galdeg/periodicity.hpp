#pragma once

// Virtual periodicity of Galois data attached to sequences in Q(zeta_m):
// fixedness patterns per automorphism, degree sequences, degree generating
// functions and minimal-polynomial sequences.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "galdeg/cyclotomic.hpp"
#include "galdeg/lrs.hpp"
#include "galdeg/period_fit.hpp"

namespace galdeg {

class PeriodNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the degree period does not divide the combined fixedness period.
class DetectionInconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws PeriodNotFound when no fit exists; needs at least 6 terms.
template <class T>
PeriodCertificate detect_virtual_period(std::span<const T> terms, std::size_t first_index = 0,
                                        std::size_t min_periods = 2) {
  if (terms.size() < 6) throw std::invalid_argument("detect_virtual_period: at least 6 terms are required");
  auto cert = find_virtual_period(terms, first_index, min_periods);
  if (!cert) throw PeriodNotFound("no virtual period with " + std::to_string(min_periods) +
                                  " confirmed periods at horizon " + std::to_string(terms.size()) +
                                  "; increase the horizon");
  return *cert;
}

struct FixednessRow {
  std::size_t t = 1;
  std::vector<bool> pattern;
  std::optional<PeriodCertificate> cert;
};

struct FixednessProfile {
  std::vector<FixednessRow> rows;
  /// (max N, lcm r) over the rows; empty when some row has no fit.
  std::optional<PeriodCertificate> combined;
};

FixednessProfile fixedness_profile(std::span<const CycElem> terms, const SubfieldSpec& base,
                                   std::size_t first_index = 0);

struct DegreeAnalysis {
  std::vector<std::size_t> degrees;
  PeriodCertificate cert;
  FixednessProfile profile;
};

DegreeAnalysis degree_sequence_analysis(std::span<const CycElem> terms, const SubfieldSpec& base,
                                        std::size_t first_index = 0);

/// sum_n degrees[n] T^(first_index + n) as a rational function over Q,
/// assembled from the certificate's head and periodic tail.
RationalFn degree_genfun(std::span<const std::size_t> degrees, const PeriodCertificate& cert);

struct MinPolyRecord {
  std::size_t index = 0;
  std::vector<std::size_t> stabilizer;
  CycPoly minpoly;
};

struct CoefficientRecurrence {
  std::size_t coefficient = 0;  // power of T
  std::size_t terms = 0;
  std::optional<InferredRecurrence> inferred;  // empty with fewer than two terms
};

struct ResidueClassReport {
  std::size_t residue = 0;  // indices N + 1 + residue + j r
  std::size_t degree = 0;
  std::vector<CoefficientRecurrence> coefficients;
};

struct MinPolySequence {
  std::vector<MinPolyRecord> records;
  PeriodCertificate degree_cert;
  std::vector<ResidueClassReport> classes;
  /// Coefficient sequences of the characteristic polynomials over all n;
  /// these are elementary symmetric functions of the conjugate sequences.
  std::vector<CoefficientRecurrence> charpoly;
};

MinPolySequence minpoly_sequence(std::span<const CycElem> terms, const SubfieldSpec& base,
                                 std::size_t first_index = 0);

struct PowerRow {
  std::size_t t = 1;
  CycElem ratio;                      // sigma_t(alpha) / alpha
  std::optional<std::size_t> order;   // order of the ratio as a root of unity
};

struct PowerSequenceAnalysis {
  std::vector<PowerRow> rows;
  FixednessProfile profile;  // exact patterns over the horizon
  std::vector<std::size_t> degrees;
  PeriodCertificate cert;  // exact
};

/// Exact Galois data of alpha^n, n = 0..horizon-1.
PowerSequenceAnalysis power_sequence_analysis(const CycElem& alpha, const SubfieldSpec& base,
                                              std::size_t horizon);

}  // namespace galdeg
