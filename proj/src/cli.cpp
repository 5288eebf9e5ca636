#include "galdeg/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>

#include "galdeg/dynamics.hpp"
#include "galdeg/expsum.hpp"
#include "galdeg/io.hpp"
#include "galdeg/lrs.hpp"
#include "galdeg/periodicity.hpp"

namespace galdeg {

namespace {

struct TableRow {
  std::size_t index;
  std::optional<std::size_t> degree;
  CycElem value;
};

struct Table {
  std::string index_name = "n";
  std::vector<TableRow> rows;
};

struct Report {
  Json body = Json::object();
  Table table;
};

struct Common {
  std::string format = "json";
  std::string output;
  bool no_timestamp = false;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string render_csv(const Table& t) {
  std::size_t width = 0;
  for (const auto& r : t.rows) width = std::max(width, r.value.coeffs().size());
  std::ostringstream os;
  os << t.index_name << ",degree";
  for (std::size_t i = 0; i < width; ++i) os << ",coeff_" << i;
  os << "\n";
  for (const auto& r : t.rows) {
    os << r.index << ",";
    if (r.degree) os << *r.degree;
    for (std::size_t i = 0; i < width; ++i)
      os << "," << (i < r.value.coeffs().size() ? rational_string(r.value.coeffs()[i]) : "0");
    os << "\n";
  }
  return os.str();
}

SubfieldSpec base_field(std::size_t m, const std::string& subgroup) {
  if (subgroup.empty()) return SubfieldSpec::rationals(m);
  return SubfieldSpec(m, parse_index_list(subgroup));
}

std::uint64_t default_budget() {
  if (const char* env = std::getenv("GALDEG_BUDGET")) {
    const auto v = parse_index_list(env);
    if (v.size() != 1 || v[0] == 0) throw ParseError("GALDEG_BUDGET must be a positive integer");
    return v[0];
  }
  return kDefaultEnumerationBudget;
}

Json degrees_with_certificate(const std::vector<std::size_t>& degrees, std::size_t first_index, Json& body) {
  body["degrees"] = degrees;
  std::optional<PeriodCertificate> cert;
  if (degrees.size() >= 6) cert = find_virtual_period<std::size_t>(degrees, first_index);
  if (cert) {
    body["certificate"] = to_json(*cert);
    body["genfun"] = to_json(degree_genfun(degrees, *cert));
  } else {
    body["certificate"] = nullptr;
    body["certificate_note"] = degrees.size() < 6 ? "fewer than 6 terms" : "no virtual period at this horizon";
    body["genfun"] = nullptr;
  }
  return body;
}

Json lfunction_json(const std::vector<CycElem>& sums) {
  try {
    const LFunction l = lfunction_from_sums(sums);
    Json j = to_json(l.fn);
    j["confirmed"] = l.confirmed;
    return j;
  } catch (const ReconstructionFailure& e) {
    return Json{{"error", e.what()}};
  }
}

// ---------------------------------------------------------------------------

struct ExpsumArgs {
  unsigned p = 0;
  std::string f;
  unsigned kmax = 0;
  unsigned k = 0;
  std::string modulus;
  unsigned threads = 1;
  std::uint64_t budget = 0;
  std::string subgroup;
};

Report cmd_expsum(const ExpsumArgs& a) {
  if ((a.kmax == 0) == (a.k == 0)) throw ParseError("give exactly one of --kmax or --k (positive)");
  if (!a.modulus.empty() && a.k == 0) throw ParseError("--modulus requires --k");
  const MultiPoly f = parse_multipoly(a.f);
  FqConfig::create(a.p, 1);
  const SubfieldSpec base = base_field(a.p, a.subgroup);
  SumOptions opts;
  opts.budget = a.budget;
  opts.threads = a.threads;
  if (!a.modulus.empty()) {
    const auto idx = parse_index_list(a.modulus);
    FpPoly mod(idx.begin(), idx.end());
    FqConfig::create(a.p, a.k, mod);
    opts.modulus = mod;
  }
  std::vector<unsigned> ks;
  if (a.k) ks.push_back(a.k);
  for (unsigned k = 1; k <= a.kmax; ++k) ks.push_back(k);

  Report rep;
  rep.table.index_name = "k";
  Json values = Json::array();
  std::vector<CycElem> sums;
  std::vector<std::size_t> degrees;
  Json weil = Json::array();
  const unsigned d = f.total_degree();
  const bool weil_applicable = f.num_vars() == 1 && d >= 1 && d % a.p != 0;
  for (unsigned k : ks) {
    const auto cfg = FqConfig::create(a.p, k, a.k ? opts.modulus : std::nullopt);
    CycElem s = exp_sum(f, a.p, k, opts);
    const std::size_t deg = degree(s, base);
    values.push_back(Json{{"k", k}, {"field", to_json(*cfg)}, {"value", to_json(s)}, {"degree", deg}});
    if (weil_applicable) {
      const WeilCheck w = weil_bound_check(s, d, a.p, k);
      weil.push_back(Json{{"k", k}, {"max_abs", w.max_abs}, {"bound", w.bound}, {"holds", w.holds}});
    }
    rep.table.rows.push_back({k, deg, s});
    sums.push_back(std::move(s));
    degrees.push_back(deg);
  }
  rep.body["values"] = values;
  degrees_with_certificate(degrees, ks.front(), rep.body);
  if (sums.size() >= 2) {
    rep.body["recurrence"] = to_json(berlekamp_massey(sums));
    if (ks.front() == 1) rep.body["lfunction"] = lfunction_json(sums);
  }
  if (weil_applicable) rep.body["weil"] = weil;
  return rep;
}

struct KloostermanArgs {
  unsigned p = 0;
  unsigned n = 1;
  long long a = 0;
  unsigned kmax = 0;
  unsigned threads = 1;
  std::uint64_t budget = 0;
};

Report cmd_kloosterman(const KloostermanArgs& a) {
  FqConfig::create(a.p, 1);
  if (a.n == 0) throw ParseError("--n must be positive");
  if (a.kmax == 0) throw ParseError("--kmax must be positive");
  const auto ip = static_cast<long long>(a.p);
  if (((a.a % ip) + ip) % ip == 0) throw ParseError("--a must be nonzero mod p");
  SumOptions opts;
  opts.budget = a.budget;
  opts.threads = a.threads;
  const auto base = SubfieldSpec::rationals(a.p);
  const std::size_t formula = kloosterman_degree_formula(a.p, a.n);

  Report rep;
  rep.table.index_name = "k";
  Json values = Json::array();
  std::vector<std::size_t> degrees;
  for (unsigned k = 1; k <= a.kmax; ++k) {
    const CycElem s = kloosterman_sum(a.n, a.a, a.p, k, opts);
    const std::size_t deg = degree(s, base);
    const bool applicable = k % a.p != 0;
    Json row{{"k", k}, {"value", to_json(s)}, {"degree", deg}, {"formula", formula},
             {"formula_applicable", applicable}};
    row["agrees"] = applicable ? Json(deg == formula) : Json(nullptr);
    values.push_back(row);
    rep.table.rows.push_back({k, deg, s});
    degrees.push_back(deg);
  }
  rep.body["values"] = values;
  degrees_with_certificate(degrees, 1, rep.body);
  return rep;
}

struct PowerArgs {
  std::size_t m = 0;
  std::string alpha;
  std::string subgroup;
  std::size_t horizon = 20;
};

Report cmd_power_seq(const PowerArgs& a) {
  if (a.m == 0) throw ParseError("--m must be positive");
  const CycElem alpha = parse_cycelem(a.alpha, a.m);
  if (alpha.is_zero()) throw ParseError("--alpha must be nonzero");
  const SubfieldSpec base = base_field(a.m, a.subgroup);
  const auto res = power_sequence_analysis(alpha, base, a.horizon);

  Report rep;
  Json rows = Json::array();
  for (const auto& r : res.rows) {
    Json row{{"t", r.t}, {"ratio", to_json(r.ratio)}};
    row["root_of_unity_order"] = r.order ? Json(*r.order) : Json(nullptr);
    rows.push_back(row);
  }
  rep.body["rows"] = rows;
  rep.body["degrees"] = res.degrees;
  rep.body["certificate"] = to_json(res.cert);
  if (res.cert.N + res.cert.r < a.horizon) rep.body["genfun"] = to_json(degree_genfun(res.degrees, res.cert));
  else rep.body["genfun"] = nullptr;
  rep.body["profile"] = to_json(res.profile);
  Json terms = Json::array();
  CycElem x(a.m, Rational(1));
  for (std::size_t n = 0; n < a.horizon; ++n) {
    rep.table.rows.push_back({n, res.degrees[n], x});
    terms.push_back(to_json(x));
    x *= alpha;
  }
  rep.body["terms"] = terms;
  return rep;
}

struct LrsArgs {
  std::size_t m = 1;
  std::string terms;
};

Report cmd_lrs(const LrsArgs& a) {
  if (a.m == 0) throw ParseError("--m must be positive");
  const auto terms = parse_cycelem_list(a.terms, a.m);
  if (terms.size() < 2) throw ParseError("--terms needs at least two values");
  const auto base = SubfieldSpec::rationals(a.m);

  Report rep;
  Json tj = Json::array();
  std::vector<std::size_t> degs;
  for (std::size_t n = 0; n < terms.size(); ++n) {
    tj.push_back(to_json(terms[n]));
    degs.push_back(degree(terms[n], base));
    rep.table.rows.push_back({n, degs.back(), terms[n]});
  }
  rep.body["terms"] = tj;
  rep.body["degrees"] = degs;
  const auto inferred = berlekamp_massey(terms);
  rep.body["recurrence"] = to_json(inferred);
  rep.body["genfun"] = to_json(generating_function(inferred.rec));
  rep.body["zero_set_empirical"] = terms.size() >= 8 ? to_json(zero_set_empirical(terms)) : Json(nullptr);
  if (inferred.rec.order() <= 2 && inferred.confirmed) {
    try {
      rep.body["zero_set_certified"] = to_json(certify_zero_set_order_le2(inferred.rec));
    } catch (const CharacteristicRootError& e) {
      rep.body["zero_set_certified"] = Json{{"error", e.what()}};
    }
  } else {
    rep.body["zero_set_certified"] = nullptr;
  }
  return rep;
}

struct IterateArgs {
  std::size_t m = 1;
  std::string f;
  std::string a;
  std::size_t nmax = 20;
  std::size_t size_budget = kDefaultSizeBudgetBits;
  std::size_t sigma = 0;
  std::string subgroup;
};

Report cmd_iterate(const IterateArgs& a) {
  if (a.m == 0) throw ParseError("--m must be positive");
  const auto coeffs = parse_cycelem_list(a.f, a.m);
  if (coeffs.empty()) throw ParseError("--f needs at least one coefficient");
  const CycPoly f(a.m, coeffs);
  const CycElem start = parse_cycelem(a.a, a.m);
  const SubfieldSpec base = base_field(a.m, a.subgroup);
  std::optional<GaloisAuto> sigma;
  if (a.sigma) sigma = GaloisAuto(a.m, a.sigma);

  const OrbitRecord orbit = iterate(f, start, a.nmax, a.size_budget);
  Report rep;
  Json pts = Json::array();
  std::vector<std::size_t> degrees;
  for (std::size_t n = 0; n < orbit.points.size(); ++n) {
    const std::size_t deg = degree(orbit.points[n], base);
    degrees.push_back(deg);
    pts.push_back(Json{{"n", n}, {"value", to_json(orbit.points[n])}, {"bits", orbit.bits[n]}, {"degree", deg}});
    rep.table.rows.push_back({n, deg, orbit.points[n]});
  }
  rep.body["points"] = pts;
  rep.body["truncated"] = orbit.truncated;
  rep.body["degrees"] = degrees;
  if (orbit.points.size() >= 6) {
    if (auto cert = find_virtual_period<std::size_t>(degrees, 0)) rep.body["certificate"] = to_json(*cert);
    else rep.body["certificate"] = nullptr;
  } else {
    rep.body["certificate"] = nullptr;
    rep.body["certificate_note"] = "fewer than 6 orbit points";
  }
  if (sigma) {
    const auto diag = diagonal_fixedness(f, start, *sigma, a.nmax, a.size_budget);
    rep.body["diagonal"] = Json{{"t", a.sigma},
                                {"pattern", pattern_string(diag.pattern)},
                                {"certificate", diag.cert ? to_json(*diag.cert) : Json(nullptr)},
                                {"equivariant", diag.equivariant},
                                {"truncated", diag.truncated}};
  }
  return rep;
}

struct MinpolyArgs {
  std::size_t m = 1;
  std::string terms;
  std::string alpha;
  std::size_t horizon = 12;
  std::string subgroup;
};

Report cmd_minpoly_seq(const MinpolyArgs& a) {
  if (a.m == 0) throw ParseError("--m must be positive");
  if (a.terms.empty() == a.alpha.empty()) throw ParseError("give exactly one of --terms or --alpha");
  std::vector<CycElem> terms;
  if (!a.terms.empty()) {
    terms = parse_cycelem_list(a.terms, a.m);
  } else {
    const CycElem alpha = parse_cycelem(a.alpha, a.m);
    CycElem x(a.m, Rational(1));
    for (std::size_t n = 0; n < a.horizon; ++n, x *= alpha) terms.push_back(x);
  }
  if (terms.size() < 8) throw ParseError("minpoly-seq needs at least 8 terms");
  const SubfieldSpec base = base_field(a.m, a.subgroup);
  const auto seq = minpoly_sequence(terms, base);

  Report rep;
  Json recs = Json::array();
  for (const auto& r : seq.records) {
    recs.push_back(Json{{"index", r.index},
                        {"stabilizer", r.stabilizer},
                        {"degree", r.minpoly.degree()},
                        {"minpoly", to_json(r.minpoly)},
                        {"text", r.minpoly.to_string()}});
    rep.table.rows.push_back({r.index, static_cast<std::size_t>(r.minpoly.degree()), terms[r.index]});
  }
  rep.body["records"] = recs;
  rep.body["degree_certificate"] = to_json(seq.degree_cert);
  auto coefficient_json = [](const std::vector<CoefficientRecurrence>& list) {
    Json coeffs = Json::array();
    for (const auto& cr : list) {
      Json j{{"coefficient", cr.coefficient}, {"terms", cr.terms}};
      if (cr.inferred) {
        j["order"] = cr.inferred->rec.order();
        j["confirmed"] = cr.inferred->confirmed;
        j["recurrence"] = to_json(*cr.inferred);
      } else {
        j["order"] = nullptr;
        j["confirmed"] = false;
      }
      coeffs.push_back(j);
    }
    return coeffs;
  };
  Json classes = Json::array();
  for (const auto& c : seq.classes)
    classes.push_back(
        Json{{"residue", c.residue}, {"degree", c.degree}, {"coefficients", coefficient_json(c.coefficients)}});
  rep.body["classes"] = classes;
  rep.body["charpoly_coefficients"] = coefficient_json(seq.charpoly);
  return rep;
}

int emit(const Report& rep, const Json& runspec, const Common& common, std::ostream& out, std::ostream& err) {
  std::string text;
  if (common.format == "csv") {
    text = render_csv(rep.table);
  } else {
    Json doc = Json::object();
    doc["runspec"] = runspec;
    if (!common.no_timestamp) doc["generated_at"] = utc_timestamp();
    for (const auto& [k, v] : rep.body.items()) doc[k] = v;
    text = doc.dump(2) + "\n";
  }
  if (common.output.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream file(common.output, std::ios::binary);
  if (!(file << text)) {
    err << "error: cannot write " << common.output << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--output", c.output, "Write the report to this file instead of standard output");
  sub->add_flag("--no-timestamp", c.no_timestamp, "Omit the generated_at field");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Galois degrees of exponential sums and related sequences", "galdeg"};
  app.require_subcommand(1);

  Common common;
  std::uint64_t budget = 0;
  std::function<Report()> run;
  Json runspec = Json::object();

  ExpsumArgs ex;
  auto* s_ex = app.add_subcommand("expsum", "Exponential sums S_k(f) and their degrees");
  s_ex->add_option("--p", ex.p, "Prime characteristic")->required();
  s_ex->add_option("--f", ex.f, "Polynomial as 'c:e1,...,en' terms")->required();
  s_ex->add_option("--kmax", ex.kmax, "Compute k = 1..kmax");
  s_ex->add_option("--k", ex.k, "Compute a single k");
  s_ex->add_option("--modulus", ex.modulus, "Irreducible modulus for F_{p^k}, constant term first (with --k)");
  s_ex->add_option("--threads", ex.threads, "Worker threads (0 = all cores)");
  s_ex->add_option("--budget", budget, "Enumeration budget in points");
  s_ex->add_option("--subgroup", ex.subgroup, "Generators of the subgroup fixing the base field");
  add_common(s_ex, common);

  KloostermanArgs kl;
  auto* s_kl = app.add_subcommand("kloosterman", "Kloosterman sums Kl_k(n, a) and their degrees");
  s_kl->add_option("--p", kl.p, "Prime characteristic")->required();
  s_kl->add_option("--n", kl.n, "Number of variables");
  s_kl->add_option("--a", kl.a, "Nonzero parameter a")->required();
  s_kl->add_option("--kmax", kl.kmax, "Compute k = 1..kmax")->required();
  s_kl->add_option("--threads", kl.threads, "Worker threads (0 = all cores)");
  s_kl->add_option("--budget", budget, "Enumeration budget in points");
  add_common(s_kl, common);

  PowerArgs pw;
  auto* s_pw = app.add_subcommand("power-seq", "Exact Galois data of the powers alpha^n");
  s_pw->add_option("--m", pw.m, "Cyclotomic modulus")->required();
  s_pw->add_option("--alpha", pw.alpha, "Nonzero element of Q(zeta_m)")->required();
  s_pw->add_option("--subgroup", pw.subgroup, "Generators of the subgroup fixing the base field");
  s_pw->add_option("--horizon", pw.horizon, "Number of terms reported");
  add_common(s_pw, common);

  LrsArgs lr;
  auto* s_lr = app.add_subcommand("lrs", "Infer a linear recurrence and analyse its zeros");
  s_lr->add_option("--m", lr.m, "Cyclotomic modulus of the terms");
  s_lr->add_option("--terms", lr.terms, "Comma-separated terms")->required();
  add_common(s_lr, common);

  IterateArgs it;
  auto* s_it = app.add_subcommand("iterate", "Orbit of a polynomial map over Q(zeta_m)");
  s_it->add_option("--m", it.m, "Cyclotomic modulus");
  s_it->add_option("--f", it.f, "Comma-separated coefficients, constant term first")->required();
  s_it->add_option("--a", it.a, "Starting point")->required();
  s_it->add_option("--nmax,--n-max", it.nmax, "Last orbit index");
  s_it->add_option("--size-budget", it.size_budget, "Coefficient size limit in bits");
  s_it->add_option("--sigma", it.sigma, "Exponent t of sigma_t for the diagonal check");
  s_it->add_option("--subgroup", it.subgroup, "Generators of the subgroup fixing the base field");
  add_common(s_it, common);

  MinpolyArgs mp;
  auto* s_mp = app.add_subcommand("minpoly-seq", "Minimal polynomials of a sequence and their recurrences");
  s_mp->add_option("--m", mp.m, "Cyclotomic modulus");
  s_mp->add_option("--terms", mp.terms, "Comma-separated terms");
  s_mp->add_option("--alpha", mp.alpha, "Use the powers alpha^n instead of --terms");
  s_mp->add_option("--horizon", mp.horizon, "Number of powers with --alpha");
  s_mp->add_option("--subgroup", mp.subgroup, "Generators of the subgroup fixing the base field");
  add_common(s_mp, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (budget == 0) budget = default_budget();
    if (s_ex->parsed()) {
      ex.budget = budget;
      runspec = Json{{"subcommand", "expsum"}, {"p", ex.p}, {"f", ex.f}, {"kmax", ex.kmax}, {"k", ex.k},
                     {"modulus", ex.modulus}, {"budget", budget},
                     {"subgroup", ex.subgroup}, {"format", common.format}};
      run = [&] { return cmd_expsum(ex); };
    } else if (s_kl->parsed()) {
      kl.budget = budget;
      runspec = Json{{"subcommand", "kloosterman"}, {"p", kl.p}, {"n", kl.n}, {"a", kl.a}, {"kmax", kl.kmax},
                     {"budget", budget}, {"format", common.format}};
      run = [&] { return cmd_kloosterman(kl); };
    } else if (s_pw->parsed()) {
      runspec = Json{{"subcommand", "power-seq"}, {"m", pw.m}, {"alpha", pw.alpha}, {"subgroup", pw.subgroup},
                     {"horizon", pw.horizon}, {"format", common.format}};
      run = [&] { return cmd_power_seq(pw); };
    } else if (s_lr->parsed()) {
      runspec = Json{{"subcommand", "lrs"}, {"m", lr.m}, {"terms", lr.terms}, {"format", common.format}};
      run = [&] { return cmd_lrs(lr); };
    } else if (s_it->parsed()) {
      runspec = Json{{"subcommand", "iterate"}, {"m", it.m}, {"f", it.f}, {"a", it.a}, {"nmax", it.nmax},
                     {"size_budget", it.size_budget}, {"sigma", it.sigma}, {"subgroup", it.subgroup},
                     {"format", common.format}};
      run = [&] { return cmd_iterate(it); };
    } else {
      runspec = Json{{"subcommand", "minpoly-seq"}, {"m", mp.m}, {"terms", mp.terms}, {"alpha", mp.alpha},
                     {"horizon", mp.horizon}, {"subgroup", mp.subgroup}, {"format", common.format}};
      run = [&] { return cmd_minpoly_seq(mp); };
    }
    const Report rep = run();
    return emit(rep, runspec, common, out, err);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace galdeg
