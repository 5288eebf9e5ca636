#include <algorithm>
#include <sstream>

#include "galdeg/cyclotomic.hpp"

namespace galdeg {

CycPoly::CycPoly(std::size_t m, std::vector<CycElem> coeffs) : m_(m), c_(std::move(coeffs)) {
  for (const auto& c : c_)
    if (c.modulus() != m_) throw ModulusMismatch("CycPoly: coefficient modulus differs from polynomial modulus");
  trim();
}

CycPoly CycPoly::constant(const CycElem& c) { return CycPoly(c.modulus(), {c}); }

CycPoly CycPoly::monomial(std::size_t m, std::size_t n) {
  std::vector<CycElem> c(n + 1, CycElem(m));
  c[n] = CycElem(m, Rational(1));
  return CycPoly(m, std::move(c));
}

void CycPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

CycElem CycPoly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : CycElem(m_); }

CycPoly& CycPoly::operator+=(const CycPoly& o) {
  if (o.m_ != m_) throw ModulusMismatch("CycPoly: moduli differ");
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), CycElem(m_));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

CycPoly& CycPoly::operator-=(const CycPoly& o) {
  if (o.m_ != m_) throw ModulusMismatch("CycPoly: moduli differ");
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), CycElem(m_));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

CycPoly operator*(const CycPoly& a, const CycPoly& b) {
  if (a.m_ != b.m_) throw ModulusMismatch("CycPoly: moduli differ");
  if (a.is_zero() || b.is_zero()) return CycPoly(a.m_);
  std::vector<CycElem> r(a.c_.size() + b.c_.size() - 1, CycElem(a.m_));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return CycPoly(a.m_, std::move(r));
}

CycPoly operator*(CycPoly a, const CycElem& c) {
  for (auto& x : a.c_) x *= c;
  a.trim();
  return a;
}

CycElem CycPoly::operator()(const CycElem& x) const {
  if (x.modulus() != m_) throw ModulusMismatch("CycPoly evaluation: moduli differ");
  CycElem acc(m_);
  for (std::size_t i = c_.size(); i-- > 0;) {
    acc *= x;
    acc += c_[i];
  }
  return acc;
}

CycPoly CycPoly::truncated(std::size_t n) const {
  CycPoly r = *this;
  if (r.c_.size() > n) r.c_.resize(n, CycElem(m_));
  r.trim();
  return r;
}

CycPoly CycPoly::reversed(std::size_t deg) const {
  if (static_cast<long>(deg) < degree()) throw std::invalid_argument("CycPoly::reversed: degree too small");
  std::vector<CycElem> r(deg + 1, CycElem(m_));
  for (std::size_t i = 0; i < c_.size(); ++i) r[deg - i] = c_[i];
  return CycPoly(m_, std::move(r));
}

CycPoly CycPoly::monic() const {
  if (is_zero()) return *this;
  return *this * inverse(leading());
}

std::string CycPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    CycElem c = c_[i];
    const bool negative = c.is_rational() && sgn(c.constant_term()) < 0;
    if (negative) c = -c;
    if (first) os << (negative ? "-" : "");
    else os << (negative ? " - " : " + ");
    first = false;
    if (i == 0) {
      os << (c.is_rational() ? c.to_string() : "(" + c.to_string() + ")");
      continue;
    }
    if (!c.is_one()) os << (c.is_rational() ? c.to_string() : "(" + c.to_string() + ")") << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

PolyDivision divmod(const CycPoly& a, const CycPoly& b) {
  if (b.is_zero()) throw ZeroDivision("CycPoly division by zero polynomial");
  if (a.modulus() != b.modulus()) throw ModulusMismatch("CycPoly: moduli differ");
  const std::size_t m = a.modulus();
  if (a.degree() < b.degree()) return {CycPoly(m), a};
  std::vector<CycElem> rem = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  std::vector<CycElem> quo(rem.size() - db, CycElem(m));
  const CycElem lead_inv = inverse(b.leading());
  for (std::size_t i = rem.size(); i-- > db;) {
    if (rem[i].is_zero()) continue;
    const CycElem c = rem[i] * lead_inv;
    quo[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] -= c * bc[j];
  }
  return {CycPoly(m, std::move(quo)), CycPoly(m, std::move(rem))};
}

CycPoly gcd(const CycPoly& a, const CycPoly& b) {
  CycPoly x = a;
  CycPoly y = b;
  while (!y.is_zero()) {
    CycPoly r = divmod(x, y).remainder;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

CycPoly apply_auto(const GaloisAuto& sigma, const CycPoly& f) {
  std::vector<CycElem> c;
  c.reserve(f.coeffs().size());
  for (const auto& x : f.coeffs()) c.push_back(apply_auto(sigma, x));
  return CycPoly(f.modulus(), std::move(c));
}

CycPoly minimal_polynomial(const CycElem& a, const SubfieldSpec& k) {
  if (a.modulus() != k.modulus()) throw ModulusMismatch("minimal_polynomial: moduli differ");
  const std::size_t m = a.modulus();
  std::vector<CycElem> conjugates;
  for (std::size_t t : k.group()) {
    CycElem c = apply_auto(t, a);
    if (std::find(conjugates.begin(), conjugates.end(), c) == conjugates.end()) conjugates.push_back(std::move(c));
  }
  CycPoly p = CycPoly::constant(CycElem(m, Rational(1)));
  for (const auto& c : conjugates) p = p * CycPoly(m, {-c, CycElem(m, Rational(1))});
  return p;
}

CycPoly characteristic_polynomial(const CycElem& a, const SubfieldSpec& k) {
  if (a.modulus() != k.modulus()) throw ModulusMismatch("characteristic_polynomial: moduli differ");
  const std::size_t m = a.modulus();
  CycPoly p = CycPoly::constant(CycElem(m, Rational(1)));
  for (std::size_t t : k.group()) p = p * CycPoly(m, {-apply_auto(t, a), CycElem(m, Rational(1))});
  return p;
}

}  // namespace galdeg
