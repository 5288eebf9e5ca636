#include "galdeg/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <numeric>
#include <thread>

namespace galdeg {

// ---------------------------------------------------------------------------
// MultiPoly

MultiPoly::MultiPoly(std::size_t nvars, std::vector<Monomial> terms) : n_(nvars) {
  if (n_ == 0) throw std::invalid_argument("MultiPoly: at least one variable is required");
  std::map<std::vector<unsigned>, std::int64_t> merged;
  for (auto& t : terms) {
    if (t.exponents.size() != n_)
      throw std::invalid_argument("MultiPoly: exponent vector length differs from variable count");
    merged[t.exponents] += t.coeff;
  }
  for (auto& [e, c] : merged)
    if (c != 0) terms_.push_back({c, e});
}

unsigned MultiPoly::total_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, std::accumulate(t.exponents.begin(), t.exponents.end(), 0U));
  return d;
}

MultiPoly MultiPoly::reduced(Residue p) const {
  std::vector<Monomial> out;
  const auto ip = static_cast<std::int64_t>(p);
  for (const auto& t : terms_) {
    const std::int64_t c = ((t.coeff % ip) + ip) % ip;
    if (c != 0) out.push_back({c, t.exponents});
  }
  return MultiPoly(n_, std::move(out));
}

MultiPoly MultiPoly::monomial(unsigned d, std::int64_t coeff) { return MultiPoly(1, {{coeff, {d}}}); }

// ---------------------------------------------------------------------------

CycElem cyclotomic_from_tally(std::span<const std::uint64_t> tally, Residue p) {
  if (tally.size() != p) throw std::invalid_argument("tally length must equal p");
  std::vector<Rational> v(p);
  for (Residue c = 0; c < p; ++c) v[c] = Rational(Integer(std::to_string(tally[c])));
  return CycElem(p, std::move(v));
}

namespace {

unsigned resolve_threads(unsigned t) {
  if (t != 0) return t;
  return std::max(1U, std::thread::hardware_concurrency());
}

// Runs fn(worker, lo, hi) over a contiguous partition of [0, count).
template <class Fn>
void parallel_chunks(std::uint64_t count, unsigned threads, Fn&& fn) {
  const std::uint64_t workers = std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, count));
  if (workers == 1) {
    fn(0U, std::uint64_t{0}, count);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t lo = count * w / workers;
    const std::uint64_t hi = count * (w + 1) / workers;
    pool.emplace_back([&, w, lo, hi] {
      try {
        fn(static_cast<unsigned>(w), lo, hi);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t e, std::uint64_t budget, const std::string& what) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (base != 0 && r > budget / base)
      throw BudgetExceeded(what + " exceeds the enumeration budget of " + std::to_string(budget));
    r *= base;
  }
  if (r > budget) throw BudgetExceeded(what + " exceeds the enumeration budget of " + std::to_string(budget));
  return r;
}

// Multiplication by a fixed field element as a k x k matrix over F_p.
class MulMatrix {
 public:
  MulMatrix(const FqElem& h) : k_(h.config()->k()), p_(h.config()->p()), cols_(k_ * k_) {
    const auto& cfg = *h.config();
    std::vector<Residue> basis(k_, 0), out(k_);
    for (unsigned j = 0; j < k_; ++j) {
      std::fill(basis.begin(), basis.end(), 0);
      basis[j] = 1;
      cfg.mul(h.coeffs(), basis, out);
      for (unsigned i = 0; i < k_; ++i) cols_[j * k_ + i] = out[i];
    }
  }

  // out = M z
  void apply(const Residue* z, Residue* out, std::uint64_t* acc) const {
    std::fill(acc, acc + k_, 0);
    for (unsigned j = 0; j < k_; ++j) {
      const std::uint64_t zj = z[j];
      if (zj == 0) continue;
      const std::uint64_t* col = &cols_[j * k_];
      for (unsigned i = 0; i < k_; ++i) acc[i] += zj * col[i];
    }
    for (unsigned i = 0; i < k_; ++i) out[i] = static_cast<Residue>(acc[i] % p_);
  }

 private:
  unsigned k_;
  Residue p_;
  std::vector<std::uint64_t> cols_;
};

// Walks h^lo, h^(lo+1), ..., h^(hi-1), calling visit(i, trace(h^i)).
template <class Visit>
void walk_powers(const FqElem& h, std::uint64_t lo, std::uint64_t hi, Visit&& visit) {
  const auto& cfg = *h.config();
  const MulMatrix mat(h);
  std::vector<Residue> z = h.pow(lo).coeffs();
  std::vector<Residue> next(cfg.k());
  std::vector<std::uint64_t> acc(cfg.k());
  for (std::uint64_t i = lo; i < hi; ++i) {
    visit(i, cfg.trace(z));
    mat.apply(z.data(), next.data(), acc.data());
    z.swap(next);
  }
}

// Tr(g^i) for every i in [0, q - 1), indexed by discrete logarithm.
struct LogTraceTable {
  FqConfigPtr cfg;
  FqElem generator;
  std::uint64_t group_order;  // q - 1
  std::vector<std::uint16_t> trace;

  LogTraceTable(const FqConfigPtr& c, unsigned threads)
      : cfg(c), generator(primitive_element(c)), group_order(c->order() - 1), trace(group_order) {
    parallel_chunks(group_order, threads, [&](unsigned, std::uint64_t lo, std::uint64_t hi) {
      walk_powers(generator, lo, hi, [&](std::uint64_t i, Residue t) { trace[i] = static_cast<std::uint16_t>(t); });
    });
  }

  // Discrete log of a nonzero prime-field constant.
  std::uint64_t log_of_constant(Residue a) const {
    const Residue p = cfg->p();
    const std::uint64_t step = group_order / (p - 1);
    // w = g^step generates F_p^*.
    const FqElem w = generator.pow(step);
    FqElem cur = FqElem::constant(cfg, 1);
    const FqElem target = FqElem::constant(cfg, a);
    for (std::uint64_t t = 0; t < p - 1; ++t) {
      if (cur == target) return t * step;
      cur = cur * w;
    }
    throw std::logic_error("log_of_constant: constant not in the subgroup");
  }
};

TraceTally merge_and_fold(const std::vector<std::vector<std::uint64_t>>& parts, Residue p) {
  TraceTally tally(p, 0);
  for (const auto& part : parts)
    for (std::size_t v = 0; v < part.size(); ++v) tally[v % p] += part[v];
  return tally;
}

TraceTally monomial_walk_tally(const FqConfigPtr& cfg, Residue c, unsigned d, unsigned threads) {
  const Residue p = cfg->p();
  const std::uint64_t group = cfg->order() - 1;
  // x -> x^d maps F_q^* onto the subgroup generated by g^e, e = gcd(d, q-1),
  // hitting each element exactly e times.
  const std::uint64_t e = std::gcd<std::uint64_t>(d, group);
  const FqElem h = primitive_element(cfg).pow(e);
  const std::uint64_t steps = group / e;
  const unsigned workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, steps)));
  std::vector<std::vector<std::uint64_t>> parts(workers, std::vector<std::uint64_t>(p, 0));
  parallel_chunks(steps, workers, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
    auto& part = parts[w];
    walk_powers(h, lo, hi, [&](std::uint64_t, Residue t) { part[(std::uint64_t(c) * t) % p] += e; });
  });
  TraceTally tally = merge_and_fold(parts, p);
  tally[0] += 1;  // x = 0
  return tally;
}

struct TermState {
  std::uint64_t coeff;
  std::vector<unsigned> exps;
};

class PolyEnumerator {
 public:
  PolyEnumerator(const LogTraceTable& table, const MultiPoly& f)
      : table_(table), q1_(table.group_order), p_(table.cfg->p()), n_(f.num_vars()) {
    for (const auto& t : f.terms()) terms_.push_back({static_cast<std::uint64_t>(t.coeff), t.exponents});
  }

  // Values of the first variable in [lo, hi); value 0 is the zero element and
  // value v >= 1 is g^(v-1).
  void run(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& hist) const {
    std::vector<char> alive(terms_.size(), 1);
    std::vector<std::uint64_t> idx(terms_.size(), 0);
    for (std::uint64_t v = lo; v < hi; ++v) visit(0, v, alive, idx, hist);
  }

  std::uint64_t values_per_var() const { return q1_ + 1; }

 private:
  void visit(std::size_t var, std::uint64_t v, std::vector<char> alive, std::vector<std::uint64_t> idx,
             std::vector<std::uint64_t>& hist) const {
    for (std::size_t t = 0; t < terms_.size(); ++t) {
      const unsigned e = terms_[t].exps[var];
      if (e == 0 || !alive[t]) continue;
      if (v == 0) alive[t] = 0;
      else idx[t] = static_cast<std::uint64_t>((idx[t] + static_cast<unsigned __int128>(e) * (v - 1)) % q1_);
    }
    if (var + 1 == n_) {
      std::uint64_t s = 0;
      for (std::size_t t = 0; t < terms_.size(); ++t)
        if (alive[t]) s += terms_[t].coeff * table_.trace[idx[t]];
      ++hist[s % p_];
      return;
    }
    for (std::uint64_t w = 0; w <= q1_; ++w) visit(var + 1, w, alive, idx, hist);
  }

  const LogTraceTable& table_;
  std::uint64_t q1_;
  Residue p_;
  std::size_t n_;
  std::vector<TermState> terms_;
};

TraceTally poly_table_tally(const FqConfigPtr& cfg, const MultiPoly& f, unsigned threads) {
  const Residue p = cfg->p();
  const LogTraceTable table(cfg, threads);
  const PolyEnumerator en(table, f);
  const std::uint64_t values = en.values_per_var();
  const unsigned workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, values)));
  std::vector<std::vector<std::uint64_t>> parts(workers, std::vector<std::uint64_t>(p, 0));
  parallel_chunks(values, workers, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) { en.run(lo, hi, parts[w]); });
  return merge_and_fold(parts, p);
}

// Kloosterman enumeration over discrete logs: the trace of
// x_1 + ... + x_n + a/(x_1...x_n) is T[i_1] + ... + T[i_n] + T[s - sum i_j].
class KloostermanEnumerator {
 public:
  KloostermanEnumerator(const LogTraceTable& table, unsigned n, std::uint64_t log_a)
      : t_(table.trace.data()),
        q1_(table.group_order),
        p_(table.cfg->p()),
        n_(n),
        log_a_(log_a),
        width_((n + 1) * table.cfg->p()) {}

  std::size_t hist_size() const { return width_; }

  void run(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& hist) const {
    for (std::uint64_t i = lo; i < hi; ++i) descend(1, t_[i], i, hist);
  }

 private:
  void descend(unsigned depth, std::uint64_t base, std::uint64_t idx_sum, std::vector<std::uint64_t>& hist) const {
    if (depth == n_) {
      const std::uint64_t rest = (log_a_ + q1_ - idx_sum % q1_) % q1_;
      ++hist[base + t_[rest]];
      return;
    }
    if (depth + 1 == n_) {
      inner(base, (log_a_ + q1_ - idx_sum % q1_) % q1_, hist);
      return;
    }
    for (std::uint64_t i = 0; i < q1_; ++i) descend(depth + 1, base + t_[i], idx_sum + i, hist);
  }

  // sum over i of [base + T[i] + T[(rem - i) mod q1]].
  void inner(std::uint64_t base, std::uint64_t rem, std::vector<std::uint64_t>& hist) const {
    const std::size_t span = 2 * p_ - 1;
    std::vector<std::uint32_t> h(4 * span, 0);
    std::uint32_t* h0 = h.data();
    std::uint32_t* h1 = h0 + span;
    std::uint32_t* h2 = h1 + span;
    std::uint32_t* h3 = h2 + span;
    const std::uint16_t* t = t_;
    std::uint64_t i = 0;
    for (; i + 3 <= rem; i += 4) {
      ++h0[t[i] + t[rem - i]];
      ++h1[t[i + 1] + t[rem - i - 1]];
      ++h2[t[i + 2] + t[rem - i - 2]];
      ++h3[t[i + 3] + t[rem - i - 3]];
    }
    for (; i <= rem; ++i) ++h0[t[i] + t[rem - i]];
    const std::uint64_t wrap = rem + q1_;
    for (; i + 4 <= q1_; i += 4) {
      ++h0[t[i] + t[wrap - i]];
      ++h1[t[i + 1] + t[wrap - i - 1]];
      ++h2[t[i + 2] + t[wrap - i - 2]];
      ++h3[t[i + 3] + t[wrap - i - 3]];
    }
    for (; i < q1_; ++i) ++h0[t[i] + t[wrap - i]];
    for (std::size_t v = 0; v < span; ++v) hist[v + base] += std::uint64_t(h0[v]) + h1[v] + h2[v] + h3[v];
  }

  const std::uint16_t* t_;
  std::uint64_t q1_;
  Residue p_;
  unsigned n_;
  std::uint64_t log_a_;
  std::size_t width_;
};

}  // namespace

TraceTally exp_sum_tally(const MultiPoly& f, Residue p, unsigned k, const SumOptions& opts) {
  const FqConfigPtr cfg = FqConfig::create(p, k, opts.modulus);
  const MultiPoly g = f.reduced(p);
  const unsigned threads = resolve_threads(opts.threads);
  const std::uint64_t points = checked_pow(cfg->order(), g.num_vars(), opts.budget, "domain (p^k)^n");

  if (g.is_zero()) {
    TraceTally tally(p, 0);
    tally[0] = points;
    return tally;
  }
  if (opts.monomial_walk && g.num_vars() == 1 && g.terms().size() == 1 && g.terms()[0].exponents[0] > 0) {
    const auto& t = g.terms()[0];
    return monomial_walk_tally(cfg, static_cast<Residue>(t.coeff), t.exponents[0], threads);
  }
  return poly_table_tally(cfg, g, threads);
}

CycElem exp_sum(const MultiPoly& f, Residue p, unsigned k, const SumOptions& opts) {
  return cyclotomic_from_tally(exp_sum_tally(f, p, k, opts), p);
}

TraceTally kloosterman_tally(unsigned n, std::int64_t a, Residue p, unsigned k, const SumOptions& opts) {
  if (n == 0) throw std::invalid_argument("kloosterman: n must be positive");
  const FqConfigPtr cfg = FqConfig::create(p, k, opts.modulus);
  const auto ip = static_cast<std::int64_t>(p);
  const auto a_mod = static_cast<Residue>(((a % ip) + ip) % ip);
  if (a_mod == 0) throw std::invalid_argument("kloosterman: a must be nonzero mod p");
  checked_pow(cfg->order() - 1, n, opts.budget, "domain (p^k - 1)^n");

  const unsigned threads = resolve_threads(opts.threads);
  const LogTraceTable table(cfg, threads);
  const KloostermanEnumerator en(table, n, table.log_of_constant(a_mod));
  const std::uint64_t outer = table.group_order;
  const unsigned workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, outer)));
  std::vector<std::vector<std::uint64_t>> parts(workers, std::vector<std::uint64_t>(en.hist_size(), 0));
  parallel_chunks(outer, workers, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) { en.run(lo, hi, parts[w]); });
  return merge_and_fold(parts, p);
}

CycElem kloosterman_sum(unsigned n, std::int64_t a, Residue p, unsigned k, const SumOptions& opts) {
  return cyclotomic_from_tally(kloosterman_tally(n, a, p, k, opts), p);
}

std::vector<std::size_t> degree_sequence(const MultiPoly& f, Residue p, unsigned k_max, const SubfieldSpec& base,
                                         const SumOptions& opts) {
  std::vector<std::size_t> out;
  for (unsigned k = 1; k <= k_max; ++k) out.push_back(degree(exp_sum(f, p, k, opts), base));
  return out;
}

std::size_t gauss_degree_formula(Residue p, unsigned d, unsigned k) {
  if (d == 0 || k == 0) throw std::domain_error("gauss_degree_formula: d and k must be positive");
  if ((p - 1) % d != 0 || std::gcd<std::uint64_t>(d, p) != 1)
    throw std::domain_error("gauss_degree_formula: requires p = 1 mod d");
  return d / std::gcd(d, k);
}

std::size_t kloosterman_degree_formula(Residue p, unsigned n) {
  const std::uint64_t pm1 = p - 1;
  return static_cast<std::size_t>(pm1 / std::gcd<std::uint64_t>(n + 1, pm1));
}

WeilCheck weil_bound_check(const CycElem& sum, unsigned d, Residue p, unsigned k, double tolerance) {
  WeilCheck w;
  for (const auto& z : complex_embeddings(sum, 128)) w.max_abs = std::max(w.max_abs, std::abs(z));
  w.bound = (static_cast<double>(d) - 1.0) * std::pow(static_cast<double>(p), k / 2.0);
  w.holds = w.max_abs <= w.bound + tolerance;
  return w;
}

}  // namespace galdeg
