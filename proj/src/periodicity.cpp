#include "galdeg/periodicity.hpp"

#include <algorithm>
#include <numeric>

namespace galdeg {

namespace {

std::vector<char> as_chars(const std::vector<bool>& v) { return {v.begin(), v.end()}; }

void check_common_modulus(std::span<const CycElem> terms, const SubfieldSpec& base) {
  for (const auto& t : terms)
    if (t.modulus() != base.modulus()) throw ModulusMismatch("terms and base field use different moduli");
}

}  // namespace

FixednessProfile fixedness_profile(std::span<const CycElem> terms, const SubfieldSpec& base, std::size_t first_index) {
  check_common_modulus(terms, base);
  FixednessProfile prof;
  bool all = true;
  std::size_t n_max = 0, r_lcm = 1;
  for (std::size_t t : base.group()) {
    FixednessRow row;
    row.t = t;
    for (const auto& a : terms) row.pattern.push_back(apply_auto(t, a) == a);
    const auto chars = as_chars(row.pattern);
    row.cert = find_virtual_period<char>(chars, first_index);
    if (row.cert) {
      n_max = std::max(n_max, row.cert->N);
      r_lcm = std::lcm(r_lcm, row.cert->r);
    } else {
      all = false;
    }
    prof.rows.push_back(std::move(row));
  }
  if (all) prof.combined = PeriodCertificate{n_max, r_lcm, terms.size(), first_index, false};
  return prof;
}

DegreeAnalysis degree_sequence_analysis(std::span<const CycElem> terms, const SubfieldSpec& base,
                                        std::size_t first_index) {
  DegreeAnalysis out;
  out.profile = fixedness_profile(terms, base, first_index);
  for (const auto& a : terms) out.degrees.push_back(degree(a, base));
  out.cert = detect_virtual_period<std::size_t>(out.degrees, first_index);
  if (out.profile.combined && out.profile.combined->r % out.cert.r != 0)
    throw DetectionInconsistency("degree period " + std::to_string(out.cert.r) +
                                 " does not divide the combined fixedness period " +
                                 std::to_string(out.profile.combined->r));
  return out;
}

RationalFn degree_genfun(std::span<const std::size_t> degrees, const PeriodCertificate& cert) {
  if (cert.horizon != degrees.size())
    throw std::invalid_argument("degree_genfun: certificate horizon does not match the list");
  const std::size_t first = cert.first_index;
  const std::size_t last = first + degrees.size() - 1;
  if (cert.N + cert.r > last) throw std::invalid_argument("degree_genfun: certificate period exceeds the list");
  auto q = [](std::size_t v) { return CycElem(1, Rational(static_cast<unsigned long>(v))); };

  std::vector<CycElem> head(cert.N + 1, CycElem(1)), block(cert.N + cert.r + 1, CycElem(1));
  for (std::size_t n = first; n <= cert.N; ++n) head[n] = q(degrees[n - first]);
  for (std::size_t n = cert.N + 1; n <= cert.N + cert.r; ++n) block[n] = q(degrees[n - first]);
  std::vector<CycElem> den(cert.r + 1, CycElem(1));
  den[0] = q(1);
  den[cert.r] = -q(1);
  const CycPoly g(1, den);
  RationalFn fn{CycPoly(1, head) * g + CycPoly(1, block), g};
  fn = fn.normalized();

  const auto series = fn.expand(last + 1);
  for (std::size_t n = 0; n <= last; ++n) {
    const std::size_t want = n < first ? 0 : degrees[n - first];
    if (!(series[n] == q(want))) throw std::invalid_argument("degree_genfun: certificate does not fit the list");
  }
  return fn;
}

MinPolySequence minpoly_sequence(std::span<const CycElem> terms, const SubfieldSpec& base, std::size_t first_index) {
  check_common_modulus(terms, base);
  MinPolySequence out;
  std::vector<std::size_t> degrees;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    MinPolyRecord rec;
    rec.index = first_index + i;
    rec.stabilizer = stabilizer(terms[i], base);
    rec.minpoly = minimal_polynomial(terms[i], base);
    degrees.push_back(static_cast<std::size_t>(rec.minpoly.degree()));
    out.records.push_back(std::move(rec));
  }
  out.degree_cert = detect_virtual_period<std::size_t>(degrees, first_index);
  const std::size_t last = first_index + terms.size() - 1;
  for (std::size_t res = 0; res < out.degree_cert.r; ++res) {
    ResidueClassReport cls;
    cls.residue = res;
    std::vector<const CycPoly*> polys;
    for (std::size_t n = out.degree_cert.N + 1 + res; n <= last; n += out.degree_cert.r)
      polys.push_back(&out.records[n - first_index].minpoly);
    if (polys.empty()) continue;
    cls.degree = static_cast<std::size_t>(polys.front()->degree());
    for (std::size_t c = 0; c <= cls.degree; ++c) {
      CoefficientRecurrence cr;
      cr.coefficient = c;
      cr.terms = polys.size();
      std::vector<CycElem> seq;
      for (const auto* p : polys) seq.push_back(p->coeff(c));
      if (seq.size() >= 2) cr.inferred = berlekamp_massey(seq);
      cls.coefficients.push_back(std::move(cr));
    }
    out.classes.push_back(std::move(cls));
  }
  std::vector<CycPoly> chars;
  for (const auto& a : terms) chars.push_back(characteristic_polynomial(a, base));
  for (std::size_t c = 0; c <= base.group_order(); ++c) {
    CoefficientRecurrence cr;
    cr.coefficient = c;
    cr.terms = chars.size();
    std::vector<CycElem> seq;
    for (const auto& p : chars) seq.push_back(p.coeff(c));
    if (seq.size() >= 2) cr.inferred = berlekamp_massey(seq);
    out.charpoly.push_back(std::move(cr));
  }
  return out;
}

PowerSequenceAnalysis power_sequence_analysis(const CycElem& alpha, const SubfieldSpec& base, std::size_t horizon) {
  if (alpha.is_zero()) throw std::invalid_argument("power_sequence_analysis: alpha must be nonzero");
  if (alpha.modulus() != base.modulus()) throw ModulusMismatch("alpha and base field use different moduli");
  if (horizon == 0) throw std::invalid_argument("power_sequence_analysis: horizon must be positive");
  PowerSequenceAnalysis out;
  std::size_t period = 1;
  for (std::size_t t : base.group()) {
    PowerRow row{t, apply_auto(t, alpha) / alpha, std::nullopt};
    row.order = root_of_unity_order(row.ratio);
    FixednessRow frow;
    frow.t = t;
    const std::size_t e = row.order.value_or(0);
    for (std::size_t n = 0; n < horizon; ++n) frow.pattern.push_back(e ? n % e == 0 : n == 0);
    frow.cert = PeriodCertificate{0, e ? e : 1, horizon, 0, true};
    period = std::lcm(period, frow.cert->r);
    out.rows.push_back(std::move(row));
    out.profile.rows.push_back(std::move(frow));
  }
  out.profile.combined = PeriodCertificate{0, period, horizon, 0, true};

  const std::size_t h = base.group_order();
  auto degree_at = [&](std::size_t n) {
    std::size_t fixed = 0;
    for (const auto& row : out.rows)
      if (row.order ? n % *row.order == 0 : n == 0) ++fixed;
    return h / fixed;
  };
  for (std::size_t n = 0; n < horizon; ++n) out.degrees.push_back(degree_at(n));

  // The degree depends only on n mod period for n >= 1; take the least
  // divisor of period that is itself a period there.
  std::size_t r = period;
  for (std::size_t d = 1; d <= period; ++d) {
    if (period % d != 0) continue;
    bool ok = true;
    for (std::size_t n = 1; n <= period && ok; ++n) ok = degree_at(n) == degree_at(n + d);
    if (ok) {
      r = d;
      break;
    }
  }
  out.cert = PeriodCertificate{0, r, horizon, 0, true};
  return out;
}

}  // namespace galdeg
