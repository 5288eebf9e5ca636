#include "galdeg/lrs.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "bigfloat.hpp"
#include "galdeg/period_fit.hpp"

namespace galdeg {

namespace {

std::size_t common_modulus(std::span<const CycElem> terms) {
  const std::size_t m = terms.front().modulus();
  for (const auto& t : terms)
    if (t.modulus() != m) throw ModulusMismatch("sequence terms have different moduli");
  return m;
}

CycPoly from_terms(std::size_t m, std::span<const CycElem> c) { return CycPoly(m, {c.begin(), c.end()}); }

constexpr std::size_t kExhaustiveZeroSearchCap = 100'000;

}  // namespace

std::string to_string(Exactness e) {
  switch (e) {
    case Exactness::certified: return "certified";
    case Exactness::empirical: return "empirical";
    case Exactness::undecidable: return "undecidable";
  }
  return "unknown";
}

CycPoly Recurrence::connection_polynomial() const {
  std::vector<CycElem> g{CycElem(modulus, Rational(1))};
  for (const auto& c : coeffs) g.push_back(-c);
  return CycPoly(modulus, std::move(g));
}

bool ZeroSetDescription::contains(std::size_t n) const {
  if (std::binary_search(exceptional.begin(), exceptional.end(), n)) return true;
  return n >= start && std::binary_search(residues.begin(), residues.end(), n % r);
}

// ---------------------------------------------------------------------------

std::vector<CycElem> RationalFn::expand(std::size_t count) const {
  const std::size_t m = den.modulus();
  if (den.is_zero() || den.coeff(0).is_zero()) throw ZeroDivision("expand: denominator vanishes at 0");
  const CycElem inv0 = inverse(den.coeff(0));
  std::vector<CycElem> s;
  s.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    CycElem v = num.coeff(n);
    const auto dd = static_cast<std::size_t>(den.degree());
    for (std::size_t i = 1; i <= std::min(n, dd); ++i) v -= den.coeffs()[i] * s[n - i];
    s.push_back(m == 1 ? v * inv0.constant_term() : v * inv0);
  }
  return s;
}

RationalFn RationalFn::normalized() const {
  if (den.is_zero()) throw ZeroDivision("rational function with zero denominator");
  const std::size_t m = den.modulus();
  RationalFn out = *this;
  const CycPoly g = gcd(num, den);
  if (!num.is_zero() && g.degree() > 0) {
    out.num = divmod(num, g).quotient;
    out.den = divmod(den, g).quotient;
  } else if (num.is_zero()) {
    out.den = CycPoly::constant(CycElem(m, Rational(1)));
    return out;
  }
  // Scale by the lowest nonzero denominator coefficient (den(0) when nonzero).
  std::size_t i = 0;
  while (out.den.coeff(i).is_zero()) ++i;
  const CycElem s = inverse(out.den.coeff(i));
  out.num = out.num * s;
  out.den = out.den * s;
  return out;
}

CycElem ClosedForm::evaluate(std::size_t n) const {
  CycElem acc(modulus);
  const CycElem nn(modulus, Rational(static_cast<unsigned long>(n)));
  for (const auto& part : parts) acc += part.h(nn) * part.beta.pow(n);
  return acc;
}

// ---------------------------------------------------------------------------

InferredRecurrence berlekamp_massey(std::span<const CycElem> s) {
  if (s.size() < 2) throw std::invalid_argument("berlekamp_massey: at least two terms are required");
  const std::size_t m = common_modulus(s);
  const CycElem zero(m), one(m, Rational(1));

  std::vector<CycElem> c{one}, b{one};
  std::size_t len = 0, shift = 1;
  CycElem last_d = one;
  for (std::size_t n = 0; n < s.size(); ++n) {
    CycElem d = s[n];
    for (std::size_t i = 1; i <= len && i < c.size(); ++i) d += c[i] * s[n - i];
    if (d.is_zero()) {
      ++shift;
      continue;
    }
    const CycElem coef = d / last_d;
    std::vector<CycElem> next = c;
    if (next.size() < b.size() + shift) next.resize(b.size() + shift, zero);
    for (std::size_t i = 0; i < b.size(); ++i) next[i + shift] -= coef * b[i];
    if (2 * len <= n) {
      b = c;
      len = n + 1 - len;
      last_d = d;
      shift = 1;
    } else {
      ++shift;
    }
    c = std::move(next);
  }

  InferredRecurrence out;
  out.rec.modulus = m;
  c.resize(std::max(c.size(), len + 1), zero);
  for (std::size_t i = 1; i <= len; ++i) out.rec.coeffs.push_back(-c[i]);
  out.rec.initial.assign(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(len));
  out.confirmed = 2 * len <= s.size();
  out.terms_used = s.size();
  return out;
}

std::vector<CycElem> extend(const Recurrence& rec, std::span<const CycElem> known, std::size_t count) {
  const std::size_t ord = rec.order();
  if (known.size() < ord) throw std::invalid_argument("extend: fewer known terms than the recurrence order");
  std::vector<CycElem> window(known.end() - static_cast<std::ptrdiff_t>(ord), known.end());
  std::vector<CycElem> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    CycElem v(rec.modulus);
    for (std::size_t i = 1; i <= ord; ++i) v += rec.coeffs[i - 1] * window[window.size() - i];
    out.push_back(v);
    if (ord > 0) {
      window.erase(window.begin());
      window.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<CycElem> extend(const Recurrence& rec, std::size_t count) { return extend(rec, rec.initial, count); }

std::vector<CycElem> sequence_terms(const Recurrence& rec, std::size_t count) {
  if (count <= rec.initial.size()) return {rec.initial.begin(), rec.initial.begin() + static_cast<std::ptrdiff_t>(count)};
  std::vector<CycElem> out = rec.initial;
  auto more = extend(rec, count - out.size());
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

RationalFn generating_function(const Recurrence& rec) {
  const std::size_t m = rec.modulus;
  const CycPoly g = rec.connection_polynomial();
  const CycPoly a = from_terms(m, rec.initial);
  RationalFn out{(a * g).truncated(rec.order()), g};
  return out.normalized();
}

InferredRecurrence arithmetic_subsequence(const Recurrence& rec, std::size_t i, std::size_t r, std::size_t count) {
  if (r == 0) throw std::invalid_argument("arithmetic_subsequence: r must be positive");
  const auto all = sequence_terms(rec, i + r * (count - 1) + 1);
  std::vector<CycElem> sub;
  for (std::size_t n = 0; n < count; ++n) sub.push_back(all[i + n * r]);
  return berlekamp_massey(sub);
}

InferredRecurrence polynomial_combination(std::span<const Recurrence> recs, std::span<const FieldTerm> g,
                                          std::size_t count) {
  if (recs.empty()) throw std::invalid_argument("polynomial_combination: no input sequences");
  const std::size_t m = recs.front().modulus;
  std::vector<std::vector<CycElem>> seqs;
  for (const auto& r : recs) {
    if (r.modulus != m) throw ModulusMismatch("polynomial_combination: recurrences over different fields");
    seqs.push_back(sequence_terms(r, count));
  }
  for (const auto& t : g) {
    if (t.exponents.size() != recs.size())
      throw std::invalid_argument("polynomial_combination: exponent vector length differs from sequence count");
    if (t.coeff.modulus() != m) throw ModulusMismatch("polynomial_combination: coefficient field differs");
  }
  std::vector<CycElem> out;
  for (std::size_t n = 0; n < count; ++n) {
    CycElem v(m);
    for (const auto& t : g) {
      CycElem term = t.coeff;
      for (std::size_t j = 0; j < recs.size(); ++j)
        if (t.exponents[j] > 0) term *= seqs[j][n].pow(t.exponents[j]);
      v += term;
    }
    out.push_back(std::move(v));
  }
  return berlekamp_massey(out);
}

// ---------------------------------------------------------------------------

LFunction lfunction_from_sums(std::span<const CycElem> sums) {
  if (sums.size() < 2) throw std::invalid_argument("lfunction_from_sums: at least two sums are required");
  const std::size_t m = common_modulus(sums);
  const std::size_t big_m = sums.size();

  // n l_n = sum_{k=1}^{n} S_k l_{n-k}
  std::vector<CycElem> l{CycElem(m, Rational(1))};
  for (std::size_t n = 1; n <= big_m; ++n) {
    CycElem acc(m);
    for (std::size_t k = 1; k <= n; ++k) acc += sums[k - 1] * l[n - k];
    l.push_back(acc * Rational(1, static_cast<unsigned long>(n)));
  }

  // Extended Euclid on (T^{M+1}, series): r_i = t_i * series mod T^{M+1}.
  CycPoly r_prev = CycPoly::monomial(m, big_m + 1);
  CycPoly r_cur(m, l);
  CycPoly t_prev(m), t_cur = CycPoly::constant(CycElem(m, Rational(1)));
  std::optional<RationalFn> best;
  long best_total = 0;
  while (true) {
    if (!t_cur.coeff(0).is_zero()) {
      const long total = std::max(r_cur.degree(), 0L) + t_cur.degree();
      if (!best || total < best_total) {
        best = RationalFn{r_cur, t_cur}.normalized();
        best_total = best->num.degree() < 0 ? best->den.degree() : best->num.degree() + best->den.degree();
      }
    }
    if (r_cur.is_zero()) break;
    auto qr = divmod(r_prev, r_cur);
    CycPoly t_next = t_prev - qr.quotient * t_cur;
    r_prev = std::move(r_cur);
    r_cur = std::move(qr.remainder);
    t_prev = std::move(t_cur);
    t_cur = std::move(t_next);
  }
  if (!best) throw ReconstructionFailure("no Pade approximant with nonzero constant denominator");
  const long a = std::max(best->num.degree(), 0L), b = best->den.degree();
  const auto mm = static_cast<long>(big_m);
  if (a + b >= mm)
    throw ReconstructionFailure("series is not rational at this horizon (degree sum " + std::to_string(a + b) + ")");
  LFunction out;
  out.fn = *best;
  out.confirmed = a + b <= mm - 2;
  out.series = std::move(l);
  return out;
}

// ---------------------------------------------------------------------------

ClosedForm closed_form(const Recurrence& rec) {
  const std::size_t m = rec.modulus;
  const std::size_t ord = rec.order();
  if (ord > 2) throw std::invalid_argument("closed_form: only orders up to 2 are supported");
  const CycElem zero(m), one(m, Rational(1));
  ClosedForm cf;
  cf.modulus = m;
  auto constant = [&](const CycElem& c) { return CycPoly::constant(c); };
  if (ord == 0) return cf;
  if (ord == 1) {
    const CycElem& c = rec.coeffs[0];
    const CycElem& a0 = rec.initial[0];
    if (c.is_zero()) {
      cf.valid_from = 1;
      return cf;
    }
    if (!a0.is_zero()) cf.parts.push_back({constant(a0), c});
    return cf;
  }
  const CycElem& c1 = rec.coeffs[0];
  const CycElem& c2 = rec.coeffs[1];
  const CycElem& a0 = rec.initial[0];
  const CycElem& a1 = rec.initial[1];
  if (c2.is_zero()) {
    // a_n = c1 a_{n-1} from n = 2 on.
    if (c1.is_zero()) {
      cf.valid_from = 2;
      return cf;
    }
    cf.valid_from = 1;
    if (!a1.is_zero()) cf.parts.push_back({constant(a1 / c1), c1});
    return cf;
  }
  const CycElem disc = c1 * c1 + c2 * Rational(4);
  const Rational half(1, 2);
  if (disc.is_zero()) {
    const CycElem alpha = c1 * half;
    const CycElem b = a1 / alpha - a0;
    CycPoly h(m, {a0, b});
    if (!h.is_zero()) cf.parts.push_back({h, alpha});
    return cf;
  }
  auto root = square_root(disc);
  if (!root)
    throw CharacteristicRootError("characteristic roots are not in Q(zeta_" + std::to_string(m) +
                                  "): discriminant " + disc.to_string() + " is not a square");
  const CycElem alpha = (c1 + *root) * half;
  const CycElem beta = (c1 - *root) * half;
  const CycElem b = (a1 - alpha * a0) / (beta - alpha);
  const CycElem a = a0 - b;
  if (!a.is_zero()) cf.parts.push_back({constant(a), alpha});
  if (!b.is_zero()) cf.parts.push_back({constant(b), beta});
  return cf;
}

ZeroSetDescription zero_set_empirical(std::span<const CycElem> terms) {
  if (terms.size() < 8) throw std::invalid_argument("zero_set_empirical: at least 8 terms are required");
  common_modulus(terms);
  ZeroSetDescription z;
  z.exactness = Exactness::empirical;
  z.horizon = terms.size();
  std::vector<bool> zero;
  for (std::size_t n = 0; n < terms.size(); ++n) {
    zero.push_back(terms[n].is_zero());
    if (zero.back()) z.observed_zeros.push_back(n);
  }
  std::vector<char> pattern(zero.begin(), zero.end());
  auto cert = find_virtual_period<char>(pattern, 0);
  if (!cert) {
    z.consistent = false;
    z.exceptional = z.observed_zeros;
    z.note = "no eventually periodic fit with two confirmed periods at this horizon";
    return z;
  }
  const std::size_t r = cert->r;
  std::set<std::size_t> res;
  for (std::size_t n = cert->N + 1; n < terms.size(); ++n)
    if (zero[n]) res.insert(n % r);
  // Extend the periodic regime backwards as far as the data allows.
  std::size_t start = cert->N + 1;
  while (start > 0 && zero[start - 1] == (res.count((start - 1) % r) > 0)) --start;
  if (res.empty()) {
    z.r = 1;
    z.start = 0;
  } else {
    z.r = r;
    z.start = start;
    z.residues.assign(res.begin(), res.end());
  }
  for (std::size_t n : z.observed_zeros)
    if (res.empty() || n < start) z.exceptional.push_back(n);
  return z;
}

ZeroSetDescription certify_zero_set_order_le2(const Recurrence& rec) {
  if (rec.order() > 2) throw std::invalid_argument("certify_zero_set_order_le2: order exceeds 2");
  if (rec.initial.size() != rec.order())
    throw std::invalid_argument("certify_zero_set_order_le2: initial terms do not match the order");
  const ClosedForm cf = closed_form(rec);
  const std::size_t m = rec.modulus;
  ZeroSetDescription z;
  z.exactness = Exactness::certified;
  const auto head = sequence_terms(rec, cf.valid_from);
  for (std::size_t n = 0; n < cf.valid_from; ++n)
    if (head[n].is_zero()) z.exceptional.push_back(n);
  // Zeros from valid_from on are {n : n mod r in res}; pull the start back
  // over head terms that agree with the progression.
  auto set_tail = [&](std::size_t r, std::vector<std::size_t> res) {
    z.r = r;
    z.residues = std::move(res);
    z.start = cf.valid_from;
    auto in_tail = [&](std::size_t n) { return std::binary_search(z.residues.begin(), z.residues.end(), n % r); };
    while (z.start > 0 && head[z.start - 1].is_zero() == in_tail(z.start - 1)) --z.start;
    z.exceptional.clear();
    for (std::size_t n = 0; n < z.start; ++n)
      if (head[n].is_zero()) z.exceptional.push_back(n);
  };
  auto finish = [&](std::size_t horizon) {
    z.horizon = horizon;
    return z;
  };

  if (cf.parts.empty()) {
    set_tail(1, {0});
    return finish(cf.valid_from);
  }

  if (cf.parts.size() == 1) {
    // h(n) beta^n with beta != 0: zero iff h(n) = 0.
    const CycPoly& h = cf.parts[0].h;
    if (h.degree() == 1) {
      const CycElem root = -(h.coeff(0) / h.coeff(1));
      if (root.is_rational()) {
        const Rational& q = root.constant_term();
        if (q.get_den() == 1 && sgn(q) >= 0) {
          const auto n = static_cast<std::size_t>(q.get_num().get_ui());
          if (n >= cf.valid_from) z.exceptional.push_back(n);
        }
      }
    }
    return finish(cf.valid_from);
  }

  // A alpha^n + B beta^n = 0  <=>  q^n = w with q = alpha/beta, w = -B/A.
  const CycElem& a = cf.parts[0].h.coeffs()[0];
  const CycElem& b = cf.parts[1].h.coeffs()[0];
  const CycElem q = cf.parts[0].beta / cf.parts[1].beta;
  const CycElem w = -(b / a);
  std::vector<std::size_t> zeros;

  if (auto e = root_of_unity_order(q)) {
    std::vector<std::size_t> res;
    CycElem cur(m, Rational(1));
    for (std::size_t j = 0; j < *e; ++j) {
      if (cur == w) res.push_back(j);
      cur *= q;
    }
    if (!res.empty()) set_tail(*e, std::move(res));
    return finish(std::max(cf.valid_from, *e));
  }

  const CycElem qbar = apply_auto(m <= 2 ? 1 : m - 1, q);
  if ((q * qbar).is_one()) {
    z.exactness = Exactness::undecidable;
    z.note = "ratio of roots has absolute value 1 at every embedding but is not a root of unity";
    return finish(cf.valid_from);
  }
  // |sigma_1(q)|^2 = sigma_1(q qbar) != 1, so |q| != 1 at the first embedding
  // and |q|^n = |w| pins down n.
  const mpfr_prec_t prec = 512;
  detail::BigFloat lq = detail::log_abs_embedding(q, 1, prec);
  detail::BigFloat lw = detail::log_abs_embedding(w, 1, prec);
  if (mpfr_cmpabs_ui(lq.get(), 0) == 0 || std::fabs(lq.to_double()) < 1e-100) {
    z.exactness = Exactness::undecidable;
    z.note = "root ratio too close to the unit circle for the magnitude bound";
    return finish(cf.valid_from);
  }
  detail::BigFloat x(prec);
  mpfr_div(x.get(), lw.get(), lq.get(), MPFR_RNDN);
  const double xv = x.to_double();
  if (xv > static_cast<double>(kExhaustiveZeroSearchCap)) {
    z.exactness = Exactness::undecidable;
    z.note = "magnitude bound on zeros exceeds the exhaustive search cap";
    return finish(cf.valid_from);
  }
  const long lo = std::max(0L, static_cast<long>(std::floor(xv)) - 1);
  const long hi = std::max(0L, static_cast<long>(std::ceil(xv)) + 1);
  for (long n = lo; n <= hi; ++n) {
    const auto un = static_cast<std::size_t>(n);
    if (un < cf.valid_from) continue;
    if (q.pow(static_cast<unsigned long>(un)) == w) z.exceptional.push_back(un);
  }
  std::sort(z.exceptional.begin(), z.exceptional.end());
  return finish(static_cast<std::size_t>(hi) + 1);
}

}  // namespace galdeg
