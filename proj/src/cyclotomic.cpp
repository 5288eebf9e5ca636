#include "galdeg/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "arith_util.hpp"

namespace galdeg {

std::size_t euler_phi(std::size_t m) {
  if (m == 0) throw std::invalid_argument("euler_phi: m must be positive");
  std::size_t result = m;
  std::size_t n = m;
  for (std::size_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      while (n % q == 0) n /= q;
      result -= result / q;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

std::vector<std::size_t> units_mod(std::size_t m) {
  if (m == 0) throw std::invalid_argument("units_mod: m must be positive");
  if (m <= 2) return {1};
  std::vector<std::size_t> out;
  for (std::size_t t = 1; t < m; ++t)
    if (std::gcd(t, m) == 1) out.push_back(t);
  return out;
}

namespace {

// Exact division of a by the monic b; a is known to be a multiple of b.
IntPoly divide_monic_exact(IntPoly a, const IntPoly& b) {
  const std::size_t db = b.size() - 1;
  IntPoly q(a.size() - db);
  for (std::size_t i = a.size(); i-- > db;) {
    const Integer c = a[i];
    q[i - db] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  return q;
}

IntPoly compute_cyclotomic(std::size_t m);

const IntPoly& cached_cyclotomic(std::size_t m) {
  static std::mutex mu;
  static std::map<std::size_t, IntPoly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  IntPoly poly = compute_cyclotomic(m);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(m, std::move(poly)).first->second;
}

IntPoly compute_cyclotomic(std::size_t m) {
  IntPoly p(m + 1, Integer(0));
  p[0] = -1;
  p[m] = 1;
  for (std::size_t d = 1; d < m; ++d)
    if (m % d == 0) p = divide_monic_exact(std::move(p), cached_cyclotomic(d));
  return p;
}

}  // namespace

IntPoly cyclotomic_polynomial(std::size_t m) {
  if (m == 0) throw std::invalid_argument("cyclotomic_polynomial: m must be positive");
  return cached_cyclotomic(m);
}

// ---------------------------------------------------------------------------
// CycElem

namespace {

void reduce_in_place(std::size_t m, std::vector<Rational>& v) {
  const IntPoly& phi = cached_cyclotomic(m);
  const std::size_t d = phi.size() - 1;
  for (std::size_t i = v.size(); i-- > d;) {
    if (sgn(v[i]) == 0) continue;
    const Rational c = v[i];
    for (std::size_t j = 0; j < d; ++j) {
      if (phi[j] != 0) v[i - d + j] -= c * phi[j];
    }
    v[i] = 0;
  }
  v.resize(d, Rational(0));
}

void check_same(std::size_t a, std::size_t b) {
  if (a != b)
    throw ModulusMismatch("cyclotomic moduli differ: " + std::to_string(a) + " vs " + std::to_string(b));
}

}  // namespace

CycElem::CycElem(std::size_t m) : m_(m) {
  if (m == 0) throw std::invalid_argument("CycElem: modulus must be positive");
  c_.assign(euler_phi(m), Rational(0));
}

CycElem::CycElem(std::size_t m, const Rational& q) : CycElem(m) { c_[0] = q; }

CycElem::CycElem(std::size_t m, std::vector<Rational> coeffs) : m_(m), c_(std::move(coeffs)) {
  if (m == 0) throw std::invalid_argument("CycElem: modulus must be positive");
  for (auto& q : c_) q.canonicalize();
  reduce_in_place(m_, c_);
}

CycElem CycElem::zeta(std::size_t m, std::size_t power) {
  std::vector<Rational> v(power % m + 1, Rational(0));
  v.back() = 1;
  return CycElem(m, std::move(v));
}

bool CycElem::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

bool CycElem::is_rational() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

bool CycElem::is_one() const { return c_[0] == 1 && is_rational(); }

CycElem& CycElem::operator+=(const CycElem& o) {
  check_same(m_, o.m_);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CycElem& CycElem::operator-=(const CycElem& o) {
  check_same(m_, o.m_);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CycElem operator*(const CycElem& a, const CycElem& b) {
  check_same(a.m_, b.m_);
  const std::size_t d = a.c_.size();
  if (d == 1) return CycElem(a.m_, a.c_[0] * b.c_[0]);
  std::vector<Rational> prod(2 * d - 1, Rational(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (sgn(b.c_[j]) == 0) continue;
      prod[i + j] += a.c_[i] * b.c_[j];
    }
  }
  CycElem out(a.m_);
  reduce_in_place(a.m_, prod);
  out.c_ = std::move(prod);
  return out;
}

CycElem& CycElem::operator*=(const CycElem& o) { return *this = *this * o; }

CycElem& CycElem::operator*=(const Rational& q) {
  for (auto& c : c_) c *= q;
  return *this;
}

CycElem CycElem::operator-() const {
  CycElem r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

CycElem CycElem::pow(unsigned long e) const {
  CycElem result(m_, Rational(1));
  CycElem base = *this;
  while (e > 0) {
    if (e & 1UL) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

std::size_t CycElem::max_bits() const {
  std::size_t bits = 0;
  for (const auto& q : c_) {
    bits = std::max(bits, mpz_sizeinbase(q.get_num_mpz_t(), 2));
    bits = std::max(bits, mpz_sizeinbase(q.get_den_mpz_t(), 2));
  }
  return bits;
}

std::string CycElem::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    const Rational& q = c_[j];
    if (sgn(q) == 0) continue;
    Rational mag = abs(q);
    if (first) {
      if (sgn(q) < 0) os << "-";
    } else {
      os << (sgn(q) < 0 ? " - " : " + ");
    }
    first = false;
    if (j == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << "zeta";
    if (j > 1) os << "^" << j;
  }
  return first ? "0" : os.str();
}

CycElem inverse(const CycElem& a) {
  if (a.is_zero()) throw ZeroDivision("inverse of zero in Q(zeta_m)");
  const std::size_t m = a.modulus();
  if (a.is_rational()) return CycElem(m, Rational(1) / a.constant_term());

  const IntPoly& phi = cyclotomic_polynomial(m);
  QPoly r0(phi.begin(), phi.end());
  QPoly r1 = a.coeffs();
  qpoly_trim(r1);
  QPoly s0{};
  QPoly s1{Rational(1)};
  while (r1.size() > 1) {
    auto [q, r] = qpoly_divmod(r0, r1);
    QPoly s2 = qpoly_sub(s0, qpoly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) throw ZeroDivision("element not invertible modulo the cyclotomic polynomial");
  const Rational scale = Rational(1) / r1[0];
  for (auto& c : s1) c *= scale;
  return CycElem(m, std::move(s1));
}

CycElem operator/(const CycElem& a, const CycElem& b) { return a * inverse(b); }

// ---------------------------------------------------------------------------
// Galois action

GaloisAuto::GaloisAuto(std::size_t m, std::size_t t) : m_(m), t_(t) {
  if (m == 0) throw std::invalid_argument("GaloisAuto: modulus must be positive");
  if (m <= 2) {
    if (t % m != 1 % m) throw std::invalid_argument("GaloisAuto: only the identity exists for m <= 2");
    t_ = 1;
    return;
  }
  if (t == 0 || t >= m || std::gcd(t, m) != 1)
    throw std::invalid_argument("GaloisAuto: t=" + std::to_string(t) + " is not a unit mod " + std::to_string(m));
}

GaloisAuto GaloisAuto::compose(const GaloisAuto& other) const {
  check_same(m_, other.m_);
  if (m_ <= 2) return *this;
  return GaloisAuto(m_, (t_ * other.t_) % m_);
}

GaloisAuto GaloisAuto::inverse() const {
  if (m_ <= 2) return *this;
  for (std::size_t u = 1; u < m_; ++u)
    if ((u * t_) % m_ == 1) return GaloisAuto(m_, u);
  throw std::logic_error("GaloisAuto::inverse: unit without inverse");
}

CycElem apply_auto(const GaloisAuto& sigma, const CycElem& a) {
  check_same(sigma.modulus(), a.modulus());
  if (sigma.exponent() == 1) return a;
  const std::size_t m = a.modulus();
  const std::size_t t = sigma.exponent();
  std::vector<Rational> img(m, Rational(0));
  const auto& c = a.coeffs();
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (sgn(c[j]) != 0) img[(t * j) % m] += c[j];
  }
  return CycElem(m, std::move(img));
}

CycElem apply_auto(std::size_t t, const CycElem& a) { return apply_auto(GaloisAuto(a.modulus(), t), a); }

std::vector<std::size_t> generate_subgroup(std::size_t m, const std::vector<std::size_t>& generators) {
  if (m <= 2) return {1};
  std::vector<std::size_t> group{1};
  std::vector<bool> seen(m, false);
  seen[1] = true;
  for (std::size_t i = 0; i < group.size(); ++i) {
    for (std::size_t g : generators) {
      const std::size_t next = (group[i] * (g % m)) % m;
      if (!seen[next]) {
        seen[next] = true;
        group.push_back(next);
      }
    }
  }
  std::sort(group.begin(), group.end());
  return group;
}

bool is_subgroup(std::size_t m, const std::vector<std::size_t>& elems) {
  if (m <= 2) return elems.size() == 1 && elems[0] == 1;
  if (std::find(elems.begin(), elems.end(), std::size_t{1}) == elems.end()) return false;
  for (std::size_t a : elems)
    for (std::size_t b : elems)
      if (std::find(elems.begin(), elems.end(), (a * b) % m) == elems.end()) return false;
  return true;
}

SubfieldSpec::SubfieldSpec(std::size_t m, std::vector<std::size_t> generators)
    : m_(m), gens_(std::move(generators)) {
  if (m == 0) throw std::invalid_argument("SubfieldSpec: modulus must be positive");
  for (auto& g : gens_) {
    if (m > 2 && std::gcd(g % m, m) != 1)
      throw std::invalid_argument("SubfieldSpec: generator " + std::to_string(g) + " is not a unit mod " +
                                  std::to_string(m));
    g = m <= 2 ? 1 : g % m;
  }
  group_ = generate_subgroup(m_, gens_);
}

SubfieldSpec SubfieldSpec::rationals(std::size_t m) { return SubfieldSpec(m, units_mod(m)); }

SubfieldSpec SubfieldSpec::whole_field(std::size_t m) { return SubfieldSpec(m, {}); }

bool SubfieldSpec::contains(std::size_t t) const {
  return std::binary_search(group_.begin(), group_.end(), m_ <= 2 ? std::size_t{1} : t % m_);
}

std::vector<std::size_t> stabilizer(const CycElem& a, const SubfieldSpec& k) {
  check_same(a.modulus(), k.modulus());
  if (a.is_rational()) return k.group();
  std::vector<std::size_t> out;
  for (std::size_t t : k.group())
    if (apply_auto(t, a) == a) out.push_back(t);
  return out;
}

std::size_t degree(const CycElem& a, const SubfieldSpec& k) {
  return k.group_order() / stabilizer(a, k).size();
}

std::optional<std::size_t> root_of_unity_order(const CycElem& a) {
  if (a.is_zero()) throw ZeroDivision("root_of_unity_order: zero element");
  const std::size_t m = a.modulus();
  const std::size_t bound = std::lcm<std::size_t>(2, m);
  if (!a.pow(bound).is_one()) return std::nullopt;
  for (std::size_t d = 1; d <= bound; ++d) {
    if (bound % d == 0 && a.pow(d).is_one()) return d;
  }
  return bound;
}

Rational trace(const CycElem& a) {
  const std::size_t m = a.modulus();
  const std::size_t phi_m = euler_phi(m);
  Rational sum = 0;
  const auto& c = a.coeffs();
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (sgn(c[j]) == 0) continue;
    // Ramanujan sum c_m(j) = mu(m/g) phi(m) / phi(m/g), g = gcd(m, j).
    const std::size_t g = std::gcd(m, j);
    const std::size_t q = m / g;
    sum += c[j] * (mobius(q) * static_cast<long>(phi_m / euler_phi(q)));
  }
  return sum;
}

}  // namespace galdeg
