#include "galdeg/finitefield.hpp"

#include <algorithm>
#include <string>

#include "arith_util.hpp"

namespace galdeg {

namespace {

void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Residue inv_mod(Residue a, Residue p) {
  // p is prime and a != 0.
  std::uint64_t result = 1, base = a % p;
  std::uint64_t e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<Residue>(result);
}

// a mod f over F_p; f is monic and trimmed.
FpPoly fp_mod(FpPoly a, const FpPoly& f, Residue p) {
  fp_trim(a);
  const std::size_t df = f.size() - 1;
  for (std::size_t i = a.size(); i-- > df;) {
    const std::uint64_t c = a[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= df; ++j) {
      a[i - df + j] = static_cast<Residue>((a[i - df + j] + (p - c) * f[j]) % p);
    }
  }
  a.resize(std::min(a.size(), df));
  fp_trim(a);
  return a;
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& f, Residue p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> t(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) t[i + j] = (t[i + j] + std::uint64_t(a[i]) * b[j]) % p;
  FpPoly r(t.begin(), t.end());
  return fp_mod(std::move(r), f, p);
}

FpPoly fp_powmod(FpPoly base, std::uint64_t e, const FpPoly& f, Residue p) {
  FpPoly result{1};
  base = fp_mod(std::move(base), f, p);
  while (e) {
    if (e & 1) result = fp_mulmod(result, base, f, p);
    e >>= 1;
    if (e) base = fp_mulmod(base, base, f, p);
  }
  return result;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, Residue p) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    // make b monic so fp_mod applies
    const Residue li = inv_mod(b.back(), p);
    for (auto& c : b) c = static_cast<Residue>(std::uint64_t(c) * li % p);
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::uint64_t checked_power(std::uint64_t p, unsigned k) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (q > (std::uint64_t{1} << 62) / p) throw std::invalid_argument("field order p^k does not fit in 62 bits");
    q *= p;
  }
  return q;
}

}  // namespace

bool is_irreducible(const FpPoly& f, Residue p) {
  if (f.size() < 2 || f.back() != 1) return false;
  const std::size_t k = f.size() - 1;
  if (k == 1) return true;
  if (f[0] == 0) return false;
  const FpPoly x{0, 1};
  FpPoly h = x;
  for (std::size_t i = 1; i <= k / 2; ++i) {
    h = fp_powmod(h, p, f, p);
    FpPoly diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = static_cast<Residue>((diff[1] + p - 1) % p);
    fp_trim(diff);
    if (diff.empty()) return false;
    if (fp_gcd(f, diff, p).size() > 1) return false;
  }
  return true;
}

FpPoly find_irreducible(Residue p, unsigned k) {
  if (!is_prime(p)) throw std::invalid_argument("find_irreducible: p is not prime");
  if (k == 0) throw std::invalid_argument("find_irreducible: k must be positive");
  const std::uint64_t count = checked_power(p, k);
  FpPoly f(k + 1, 0);
  f[k] = 1;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    // idx enumerates (c_{k-1}, ..., c_0) with c_{k-1} most significant.
    std::uint64_t v = idx;
    for (unsigned j = 0; j < k; ++j) {
      f[j] = static_cast<Residue>(v % p);
      v /= p;
    }
    if (is_irreducible(f, p)) return f;
  }
  throw std::logic_error("find_irreducible: no irreducible polynomial found");
}

// ---------------------------------------------------------------------------

FqConfigPtr FqConfig::create(Residue p, unsigned k, std::optional<FpPoly> modulus) {
  if (!is_prime(p)) throw std::invalid_argument("FqConfig: p=" + std::to_string(p) + " is not prime");
  if (p > kMaxCharacteristic) throw std::invalid_argument("FqConfig: characteristic too large");
  if (k == 0) throw std::invalid_argument("FqConfig: k must be positive");
  FpPoly f;
  if (modulus) {
    f = *modulus;
    if (f.size() != k + 1 || f.back() != 1)
      throw std::invalid_argument("FqConfig: modulus must be monic of degree k");
    for (Residue c : f)
      if (c >= p) throw std::invalid_argument("FqConfig: modulus coefficient out of range");
    if (!is_irreducible(f, p)) throw std::invalid_argument("FqConfig: modulus is not irreducible");
  } else {
    f = find_irreducible(p, k);
  }
  return FqConfigPtr(new FqConfig(p, k, std::move(f)));
}

FqConfig::FqConfig(Residue p, unsigned k, FpPoly modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)), order_(checked_power(p, k)) {
  // Tr(x^i) = sum_j (x^i)^(p^j); the result lies in F_p.
  trace_basis_.assign(k_, 0);
  for (unsigned i = 0; i < k_; ++i) {
    FpPoly xi(i + 1, 0);
    xi[i] = 1;
    xi = fp_mod(std::move(xi), modulus_, p_);
    FpPoly acc;
    FpPoly cur = xi;
    for (unsigned j = 0; j < k_; ++j) {
      acc.resize(std::max(acc.size(), cur.size()), 0);
      for (std::size_t c = 0; c < cur.size(); ++c) acc[c] = (acc[c] + cur[c]) % p_;
      cur = fp_powmod(cur, p_, modulus_, p_);
    }
    fp_trim(acc);
    if (acc.size() > 1) throw std::logic_error("trace landed outside the prime field");
    trace_basis_[i] = acc.empty() ? 0 : acc[0];
  }
}

void FqConfig::mul(std::span<const Residue> a, std::span<const Residue> b, std::span<Residue> out) const {
  const std::size_t k = k_;
  std::uint64_t t[2 * 64];
  std::vector<std::uint64_t> heap;
  std::uint64_t* tmp = t;
  if (2 * k > 128) {
    heap.assign(2 * k, 0);
    tmp = heap.data();
  } else {
    std::fill(t, t + 2 * k, 0);
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < k; ++j) tmp[i + j] += std::uint64_t(a[i]) * b[j];
    if ((i & 15) == 15)
      for (std::size_t j = 0; j < 2 * k; ++j) tmp[j] %= p_;
  }
  for (std::size_t i = 2 * k - 1; i-- > k;) {
    const std::uint64_t c = tmp[i] % p_;
    if (c == 0) continue;
    for (std::size_t j = 0; j < k; ++j) tmp[i - k + j] = (tmp[i - k + j] + c * (p_ - modulus_[j])) % p_;
  }
  for (std::size_t j = 0; j < k; ++j) out[j] = static_cast<Residue>(tmp[j] % p_);
}

Residue FqConfig::trace(std::span<const Residue> a) const {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < k_; ++i) s += std::uint64_t(a[i]) * trace_basis_[i];
  return static_cast<Residue>(s % p_);
}

// ---------------------------------------------------------------------------

FqElem::FqElem(FqConfigPtr cfg) : cfg_(std::move(cfg)), c_(cfg_->k(), 0) {}

FqElem::FqElem(FqConfigPtr cfg, std::vector<Residue> coeffs) : cfg_(std::move(cfg)), c_(std::move(coeffs)) {
  if (c_.size() != cfg_->k()) throw std::invalid_argument("FqElem: coordinate count must equal k");
  for (auto& c : c_) c %= cfg_->p();
}

FqElem FqElem::constant(FqConfigPtr cfg, std::int64_t c) {
  FqElem e(std::move(cfg));
  const auto p = static_cast<std::int64_t>(e.cfg_->p());
  e.c_[0] = static_cast<Residue>(((c % p) + p) % p);
  return e;
}

FqElem FqElem::generator_x(FqConfigPtr cfg) {
  FpPoly x{0, 1};
  x = fp_mod(std::move(x), cfg->modulus(), cfg->p());
  x.resize(cfg->k(), 0);
  return FqElem(std::move(cfg), std::move(x));
}

bool FqElem::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](Residue r) { return r == 0; });
}

void FqElem::check(const FqElem& o) const {
  if (cfg_ != o.cfg_ && (cfg_->p() != o.cfg_->p() || cfg_->modulus() != o.cfg_->modulus()))
    throw std::invalid_argument("FqElem: field configurations differ");
}

FqElem FqElem::operator+(const FqElem& o) const {
  check(o);
  FqElem r(cfg_);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = (c_[i] + o.c_[i]) % cfg_->p();
  return r;
}

FqElem FqElem::operator-(const FqElem& o) const {
  check(o);
  FqElem r(cfg_);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = (c_[i] + cfg_->p() - o.c_[i]) % cfg_->p();
  return r;
}

FqElem FqElem::operator-() const { return FqElem(cfg_) - *this; }

FqElem FqElem::operator*(const FqElem& o) const {
  check(o);
  FqElem r(cfg_);
  cfg_->mul(c_, o.c_, r.c_);
  return r;
}

FqElem FqElem::pow(std::uint64_t e) const {
  FqElem result = constant(cfg_, 1);
  FqElem base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

FqElem FqElem::inverse() const {
  if (is_zero()) throw std::domain_error("FqElem: inverse of zero");
  return pow(cfg_->order() - 2);
}

// ---------------------------------------------------------------------------

ElementRange::iterator::iterator(FqConfigPtr cfg, std::uint64_t index)
    : cfg_(std::move(cfg)), index_(index), digits_(cfg_->k(), 0) {
  std::uint64_t v = index;
  for (std::size_t i = digits_.size(); i-- > 0;) {
    digits_[i] = static_cast<Residue>(v % cfg_->p());
    v /= cfg_->p();
  }
}

ElementRange::iterator& ElementRange::iterator::operator++() {
  ++index_;
  for (std::size_t i = digits_.size(); i-- > 0;) {
    if (++digits_[i] < cfg_->p()) break;
    digits_[i] = 0;
  }
  return *this;
}

ElementRange enumerate(const FqConfigPtr& cfg, std::uint64_t budget) {
  if (cfg->order() > budget)
    throw BudgetExceeded("enumeration of " + std::to_string(cfg->order()) + " elements exceeds budget " +
                         std::to_string(budget));
  return ElementRange(cfg);
}

FqElem primitive_element(const FqConfigPtr& cfg) {
  const std::uint64_t n = cfg->order() - 1;
  const auto factors = prime_factors(n);
  const FqElem one = FqElem::constant(cfg, 1);
  for (auto it = ElementRange(cfg).begin(), end = ElementRange(cfg).end(); it != end; ++it) {
    FqElem g = *it;
    if (g.is_zero()) continue;
    bool ok = true;
    for (auto q : factors) {
      if (g.pow(n / q) == one) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("primitive_element: none found");
}

}  // namespace galdeg
