#pragma once

// Text and JSON forms of the library's values.
//
// CycElem text: "1 + 2*zeta^2", "-1/3*zeta", "zeta", "7".
// CycElem JSON: {"m": 3, "coeffs": [["-1", "3"], ["-2", "3"]]}, decimal strings.
// MultiPoly text: terms "c:e1,...,en" separated by ';' or whitespace.

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

#include "galdeg/cyclotomic.hpp"
#include "galdeg/expsum.hpp"
#include "galdeg/finitefield.hpp"
#include "galdeg/lrs.hpp"
#include "galdeg/periodicity.hpp"

namespace galdeg {

using Json = nlohmann::ordered_json;

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Rational parse_rational(std::string_view s);
CycElem parse_cycelem(std::string_view text, std::size_t m);
/// Comma-separated CycElem texts.
std::vector<CycElem> parse_cycelem_list(std::string_view text, std::size_t m);
MultiPoly parse_multipoly(std::string_view text);
/// Comma-separated non-negative integers.
std::vector<std::size_t> parse_index_list(std::string_view text);

std::string rational_string(const Rational& q);

Json to_json(const CycElem& a);
CycElem cycelem_from_json(const Json& j);
Json to_json(const CycPoly& f);
Json to_json(const FqConfig& cfg);
Json to_json(const Recurrence& rec);
Json to_json(const InferredRecurrence& rec);
Json to_json(const RationalFn& fn);
Json to_json(const PeriodCertificate& cert);
Json to_json(const ZeroSetDescription& z);
Json to_json(const FixednessProfile& prof);

/// "T F F T ..." style string, one character per index.
std::string pattern_string(const std::vector<bool>& pattern);

}  // namespace galdeg
