#include "galdeg/dynamics.hpp"

#include "galdeg/periodicity.hpp"

namespace galdeg {

namespace {

void check_moduli(const CycPoly& f, const CycElem& a) {
  if (f.modulus() != a.modulus()) throw ModulusMismatch("polynomial and starting point use different moduli");
}

}  // namespace

OrbitRecord iterate(const CycPoly& f, const CycElem& a, std::size_t n_max, std::size_t size_budget_bits) {
  check_moduli(f, a);
  OrbitRecord rec;
  CycElem x = a;
  for (std::size_t n = 0; n <= n_max; ++n) {
    const std::size_t bits = x.max_bits();
    if (bits > size_budget_bits) {
      rec.truncated = true;
      break;
    }
    rec.points.push_back(x);
    rec.bits.push_back(bits);
    if (n < n_max) x = f(x);
  }
  return rec;
}

OrbitDegrees orbit_degree_analysis(const OrbitRecord& record, const SubfieldSpec& base) {
  if (record.points.size() < 6)
    throw std::invalid_argument("orbit_degree_analysis: orbit has fewer than 6 points");
  OrbitDegrees out;
  for (const auto& x : record.points) out.degrees.push_back(degree(x, base));
  out.cert = detect_virtual_period<std::size_t>(out.degrees, 0);
  return out;
}

DiagonalFixedness diagonal_fixedness(const CycPoly& f, const CycElem& a, const GaloisAuto& sigma, std::size_t n_max,
                                     std::size_t size_budget_bits) {
  check_moduli(f, a);
  if (sigma.modulus() != a.modulus()) throw ModulusMismatch("automorphism and starting point use different moduli");
  const CycPoly sf = apply_auto(sigma, f);
  DiagonalFixedness out;
  CycElem x = a, y = apply_auto(sigma, a);
  for (std::size_t n = 0; n <= n_max; ++n) {
    if (x.max_bits() > size_budget_bits || y.max_bits() > size_budget_bits) {
      out.truncated = true;
      break;
    }
    out.pattern.push_back(x == y);
    if (!(apply_auto(sigma, x) == y)) out.equivariant = false;
    if (n < n_max) {
      x = f(x);
      y = sf(y);
    }
  }
  const std::vector<char> chars(out.pattern.begin(), out.pattern.end());
  out.cert = find_virtual_period<char>(chars, 0);
  return out;
}

}  // namespace galdeg
