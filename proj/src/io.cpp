#include "galdeg/io.hpp"

#include <cctype>
#include <charconv>

namespace galdeg {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    out.push_back(trim(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

unsigned long parse_unsigned(std::string_view s, const char* what) {
  s = trim(s);
  unsigned long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(std::string("invalid ") + what + ": '" + std::string(s) + "'");
  return v;
}

bool is_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Recursive-descent reader for sums of c*zeta^e terms.
class CycParser {
 public:
  CycParser(std::string_view s, std::size_t m) : s_(s), m_(m) {}

  CycElem parse() {
    CycElem acc(m_);
    skip();
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      CycElem t = term();
      acc += sign < 0 ? -t : t;
      first = false;
      skip();
    }
    if (first) fail("empty expression");
    return acc;
  }

 private:
  CycElem term() {
    Rational coeff(1);
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = number();
      have_coeff = true;
      skip();
      if (peek() == '*') {
        ++pos_;
        skip();
      } else if (peek() != 'z') {
        return CycElem(m_, coeff);
      }
    }
    if (s_.substr(pos_, 4) != "zeta") {
      if (have_coeff) fail("expected 'zeta'");
      fail("expected a number or 'zeta'");
    }
    pos_ += 4;
    skip();
    std::size_t e = 1;
    if (peek() == '^') {
      ++pos_;
      skip();
      const std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (start == pos_) fail("expected an exponent");
      e = parse_unsigned(s_.substr(start, pos_ - start), "exponent");
    }
    return CycElem::zeta(m_, e % std::max<std::size_t>(m_, 1)) * coeff;
  }

  Rational number() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (peek() == '/') {
      ++pos_;
      const std::size_t d = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (d == pos_) fail("expected a denominator");
    }
    return parse_rational(s_.substr(start, pos_ - start));
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("cannot parse field element '" + std::string(s_) + "' at position " + std::to_string(pos_) +
                     ": " + msg);
  }

  std::string_view s_;
  std::size_t m_;
  std::size_t pos_ = 0;
};

}  // namespace

Rational parse_rational(std::string_view s) {
  s = trim(s);
  const auto slash = s.find('/');
  const std::string_view num = s.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!is_integer_text(num) || !is_integer_text(den) || den.front() == '-' || den.front() == '+')
    throw ParseError("invalid rational '" + std::string(s) + "'");
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  const Integer d{std::string(den)};
  if (d == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
  Rational q(Integer(n), d);
  q.canonicalize();
  return q;
}

std::string rational_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

CycElem parse_cycelem(std::string_view text, std::size_t m) {
  if (m == 0) throw ParseError("modulus must be positive");
  const auto t = trim(text);
  if (!t.empty() && t.front() == '{') {
    Json j;
    try {
      j = Json::parse(t);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("invalid field element JSON: ") + e.what());
    }
    CycElem a = cycelem_from_json(j);
    if (a.modulus() != m) throw ParseError("field element JSON has modulus " + std::to_string(a.modulus()));
    return a;
  }
  return CycParser(t, m).parse();
}

std::vector<CycElem> parse_cycelem_list(std::string_view text, std::size_t m) {
  std::vector<CycElem> out;
  if (trim(text).empty()) return out;
  for (auto part : split(text, ',')) out.push_back(parse_cycelem(part, m));
  return out;
}

MultiPoly parse_multipoly(std::string_view text) {
  std::vector<Monomial> terms;
  std::size_t nvars = 0;
  std::string buf(text);
  for (char& c : buf)
    if (c == ';') c = ' ';
  std::size_t pos = 0;
  while (pos < buf.size()) {
    while (pos < buf.size() && std::isspace(static_cast<unsigned char>(buf[pos]))) ++pos;
    if (pos == buf.size()) break;
    std::size_t end = pos;
    while (end < buf.size() && !std::isspace(static_cast<unsigned char>(buf[end]))) ++end;
    const std::string_view tok(buf.data() + pos, end - pos);
    pos = end;
    const auto colon = tok.find(':');
    if (colon == std::string_view::npos) throw ParseError("polynomial term '" + std::string(tok) + "' lacks ':'");
    const auto c = tok.substr(0, colon);
    if (!is_integer_text(c)) throw ParseError("invalid coefficient in '" + std::string(tok) + "'");
    std::int64_t coeff = 0;
    auto cc = c.front() == '+' ? c.substr(1) : c;
    auto [ptr, ec] = std::from_chars(cc.data(), cc.data() + cc.size(), coeff);
    if (ec != std::errc() || ptr != cc.data() + cc.size())
      throw ParseError("coefficient out of range in '" + std::string(tok) + "'");
    Monomial mono{coeff, {}};
    for (auto e : split(tok.substr(colon + 1), ','))
      mono.exponents.push_back(static_cast<unsigned>(parse_unsigned(e, "exponent")));
    if (nvars == 0) nvars = mono.exponents.size();
    if (mono.exponents.size() != nvars) throw ParseError("polynomial terms disagree on the number of variables");
    terms.push_back(std::move(mono));
  }
  if (terms.empty()) throw ParseError("empty polynomial");
  return MultiPoly(nvars, std::move(terms));
}

std::vector<std::size_t> parse_index_list(std::string_view text) {
  std::vector<std::size_t> out;
  if (trim(text).empty()) return out;
  for (auto part : split(text, ',')) out.push_back(parse_unsigned(part, "integer"));
  return out;
}

Json to_json(const CycElem& a) {
  Json coeffs = Json::array();
  for (const auto& q : a.coeffs()) coeffs.push_back(Json::array({q.get_num().get_str(), q.get_den().get_str()}));
  return Json{{"m", a.modulus()}, {"coeffs", coeffs}, {"text", a.to_string()}};
}

CycElem cycelem_from_json(const Json& j) {
  try {
    const std::size_t m = j.at("m").get<std::size_t>();
    if (m == 0) throw ParseError("modulus must be positive");
    std::vector<Rational> c;
    for (const auto& v : j.at("coeffs")) {
      if (v.is_array()) {
        if (v.size() != 2) throw ParseError("coordinate pairs must be [num, den]");
        c.push_back(parse_rational(v[0].get<std::string>() + "/" + v[1].get<std::string>()));
      } else if (v.is_string()) {
        c.push_back(parse_rational(v.get<std::string>()));
      } else {
        c.push_back(Rational(v.get<long>()));
      }
    }
    if (c.size() > euler_phi(m)) throw ParseError("too many coordinates for modulus " + std::to_string(m));
    return CycElem(m, std::move(c));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid field element JSON: ") + e.what());
  }
}

Json to_json(const CycPoly& f) {
  Json arr = Json::array();
  for (const auto& c : f.coeffs()) arr.push_back(to_json(c));
  return arr;
}

Json to_json(const FqConfig& cfg) { return Json{{"p", cfg.p()}, {"k", cfg.k()}, {"modulus", cfg.modulus()}}; }

Json to_json(const Recurrence& rec) {
  Json c = Json::array(), init = Json::array();
  for (const auto& x : rec.coeffs) c.push_back(to_json(x));
  for (const auto& x : rec.initial) init.push_back(to_json(x));
  return Json{{"order", rec.order()}, {"coeffs", c}, {"initial", init}};
}

Json to_json(const InferredRecurrence& rec) {
  Json j = to_json(rec.rec);
  j["confirmed"] = rec.confirmed;
  j["terms_used"] = rec.terms_used;
  return j;
}

Json to_json(const RationalFn& fn) {
  const bool poly = fn.den.degree() == 0 && fn.den.coeff(0).is_one();
  return Json{{"num", to_json(fn.num)},
              {"den", to_json(fn.den)},
              {"text", poly ? fn.num.to_string() : "(" + fn.num.to_string() + ")/(" + fn.den.to_string() + ")"}};
}

Json to_json(const PeriodCertificate& cert) {
  return Json{{"N", cert.N},
              {"r", cert.r},
              {"horizon", cert.horizon},
              {"first_index", cert.first_index},
              {"exact", cert.exact}};
}

Json to_json(const ZeroSetDescription& z) {
  Json j{{"exceptional", z.exceptional},
         {"r", z.r},
         {"residues", z.residues},
         {"start", z.start},
         {"exactness", to_string(z.exactness)},
         {"horizon", z.horizon},
         {"consistent", z.consistent}};
  if (z.exactness == Exactness::empirical) j["observed_zeros"] = z.observed_zeros;
  if (!z.note.empty()) j["note"] = z.note;
  return j;
}

std::string pattern_string(const std::vector<bool>& pattern) {
  std::string s;
  for (bool b : pattern) s.push_back(b ? 'T' : 'F');
  return s;
}

Json to_json(const FixednessProfile& prof) {
  Json rows = Json::object();
  for (const auto& row : prof.rows) {
    Json r{{"pattern", pattern_string(row.pattern)}};
    if (row.cert) {
      r["N"] = row.cert->N;
      r["r"] = row.cert->r;
    } else {
      r["N"] = nullptr;
      r["r"] = nullptr;
    }
    rows[std::to_string(row.t)] = r;
  }
  return rows;
}

}  // namespace galdeg
