#pragma once

// Serialization of BoundReport: key-value text, JSON, and CSV (one row per (m, p)).
// Every number is written with 15 significant digits; reading and re-writing an
// emitted report reproduces it byte for byte.

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hlb/certify.hpp"
#include "hlb/extended_real.hpp"

namespace hlb {

namespace detail {

inline const char* flag(bool b) { return b ? "true" : "false"; }

inline std::string lower_bound_line(const std::string& key, const LowerBound& lb) {
  std::string s = key + "=" + format_number(lb.value) + ", certified=" + flag(lb.certified) +
                  ", conditional=" + flag(lb.conditional) + ", norm_upper=" + format_number(lb.norm_upper) +
                  ", norm_method=" + to_string(lb.norm_method);
  if (lb.norm_method == NormMethod::recursion) s += "(" + to_string(lb.base_norm_method) + ")";
  return s;
}

}  // namespace detail

/// Key-value text, one bound per line.
inline void write_report_text(std::ostream& os, const BoundReport& r) {
  using detail::flag;
  os << "m=" << r.m << '\n';
  os << "p=" << format_number(r.p) << '\n';
  os << "rho=" << format_number(r.rho.rho) << '\n';
  os << "dual_rho=" << format_number(r.rho.dual_rho) << '\n';
  os << "lower_001=" << format_number(r.lower_001) << ", certified=true, conditional=false, method=closed_form\n";
  if (r.lower_step4)
    os << "lower_step4=" << format_number(*r.lower_step4)
       << ", certified=false, conditional=true, method=closed_form_interpolation\n";
  os << detail::lower_bound_line("quotient", r.quotient) << '\n';
  if (r.quotient_interpolation) os << detail::lower_bound_line("quotient_interpolation", *r.quotient_interpolation) << '\n';
  os << "t2_norm=[" << format_number(r.t2_norm.lower) << ", " << format_number(r.t2_norm.upper)
     << "], method=" << to_string(r.t2_norm.method_upper) << ", certified=" << flag(r.t2_norm.certified_upper)
     << ", gap=" << format_number(r.gap_used) << '\n';
  os << "interpolation_contradicted=" << flag(r.interpolation_contradicted) << '\n';
  os << "upper_known=" << format_number(r.upper_known) << ", field=real\n";
  os << "best_lower=" << format_number(r.best_lower) << '\n';
  os << "pop=" << flag(r.theorem_pop_holds) << '\n';
  os << "consistent=" << flag(r.consistent) << '\n';
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace detail {

inline nlohmann::ordered_json ext_to_json(const ExtReal& x) {
  if (x.is_infinite()) return "inf";
  return round_to_output(x.value());
}

inline ExtReal ext_from_json(const nlohmann::ordered_json& j) {
  if (j.is_string()) return parse_ext_real(j.get<std::string>());
  return ExtReal(j.get<double>());
}

inline nlohmann::ordered_json lower_bound_to_json(const LowerBound& lb) {
  nlohmann::ordered_json j;
  j["value"] = round_to_output(lb.value);
  j["certified"] = lb.certified;
  j["conditional"] = lb.conditional;
  j["norm_upper"] = round_to_output(lb.norm_upper);
  j["norm_method"] = to_string(lb.norm_method);
  j["base_norm_method"] = to_string(lb.base_norm_method);
  return j;
}

inline LowerBound lower_bound_from_json(const nlohmann::ordered_json& j) {
  LowerBound lb;
  lb.value = j.at("value").get<double>();
  lb.certified = j.at("certified").get<bool>();
  lb.conditional = j.at("conditional").get<bool>();
  lb.norm_upper = j.at("norm_upper").get<double>();
  lb.norm_method = norm_method_from_string(j.at("norm_method").get<std::string>());
  lb.base_norm_method = norm_method_from_string(j.at("base_norm_method").get<std::string>());
  return lb;
}

}  // namespace detail

inline nlohmann::ordered_json report_to_json(const BoundReport& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["m"] = r.m;
  j["p"] = detail::ext_to_json(r.p);
  j["rho"] = round_to_output(r.rho.rho);
  j["dual_rho"] = round_to_output(r.rho.dual_rho);
  j["lower_001"] = round_to_output(r.lower_001);
  j["lower_step4"] = r.lower_step4 ? ordered_json(round_to_output(*r.lower_step4)) : ordered_json(nullptr);
  j["quotient"] = detail::lower_bound_to_json(r.quotient);
  j["quotient_interpolation"] =
      r.quotient_interpolation ? detail::lower_bound_to_json(*r.quotient_interpolation) : ordered_json(nullptr);
  j["t2_norm"] = {{"lower", round_to_output(r.t2_norm.lower)},
                  {"upper", round_to_output(r.t2_norm.upper)},
                  {"method_lower", to_string(r.t2_norm.method_lower)},
                  {"method_upper", to_string(r.t2_norm.method_upper)},
                  {"certified_upper", r.t2_norm.certified_upper},
                  {"conditional", r.t2_norm.conditional}};
  j["gap"] = round_to_output(r.gap_used);
  j["interpolation_contradicted"] = r.interpolation_contradicted;
  j["upper_known"] = round_to_output(r.upper_known);
  j["best_lower"] = round_to_output(r.best_lower);
  j["theorem_pop_holds"] = r.theorem_pop_holds;
  j["consistent"] = r.consistent;
  return j;
}

inline BoundReport report_from_json(const nlohmann::ordered_json& j) {
  BoundReport r;
  r.m = j.at("m").get<int>();
  r.p = detail::ext_from_json(j.at("p"));
  r.rho = {j.at("rho").get<double>(), j.at("dual_rho").get<double>()};
  r.lower_001 = j.at("lower_001").get<double>();
  if (!j.at("lower_step4").is_null()) r.lower_step4 = j.at("lower_step4").get<double>();
  r.quotient = detail::lower_bound_from_json(j.at("quotient"));
  if (!j.at("quotient_interpolation").is_null())
    r.quotient_interpolation = detail::lower_bound_from_json(j.at("quotient_interpolation"));
  const auto& t = j.at("t2_norm");
  r.t2_norm.lower = t.at("lower").get<double>();
  r.t2_norm.upper = t.at("upper").get<double>();
  r.t2_norm.method_lower = norm_method_from_string(t.at("method_lower").get<std::string>());
  r.t2_norm.method_upper = norm_method_from_string(t.at("method_upper").get<std::string>());
  r.t2_norm.certified_upper = t.at("certified_upper").get<bool>();
  r.t2_norm.conditional = t.at("conditional").get<bool>();
  r.gap_used = j.at("gap").get<double>();
  r.interpolation_contradicted = j.at("interpolation_contradicted").get<bool>();
  r.upper_known = j.at("upper_known").get<double>();
  r.best_lower = j.at("best_lower").get<double>();
  r.theorem_pop_holds = j.at("theorem_pop_holds").get<bool>();
  r.consistent = j.at("consistent").get<bool>();
  return r;
}

/// A JSON array of reports, two-space indented, trailing newline.
inline std::string reports_to_json(const std::vector<BoundReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  return arr.dump(2) + "\n";
}

inline std::vector<BoundReport> reports_from_json(const std::string& text) {
  const auto arr = nlohmann::ordered_json::parse(text);
  std::vector<BoundReport> out;
  for (const auto& j : arr) out.push_back(report_from_json(j));
  return out;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

inline constexpr const char* kCsvHeader =
    "m,p,rho,lower_001,lower_step4,quotient,quotient_certified,t2_lower,t2_upper,norm_upper,"
    "quotient_interpolation,interpolation_contradicted,upper_known,best_lower,pop";

inline void write_reports_csv(std::ostream& os, const std::vector<BoundReport>& reports) {
  using detail::flag;
  os << kCsvHeader << '\n';
  for (const auto& r : reports) {
    os << r.m << ',' << format_number(r.p) << ',' << format_number(r.rho.rho) << ',' << format_number(r.lower_001)
       << ',' << (r.lower_step4 ? format_number(*r.lower_step4) : "") << ',' << format_number(r.quotient.value) << ','
       << flag(r.quotient.certified) << ',' << format_number(r.t2_norm.lower) << ','
       << format_number(r.t2_norm.upper) << ',' << format_number(r.quotient.norm_upper) << ','
       << (r.quotient_interpolation ? format_number(r.quotient_interpolation->value) : "") << ','
       << flag(r.interpolation_contradicted) << ',' << format_number(r.upper_known) << ','
       << format_number(r.best_lower) << ',' << flag(r.theorem_pop_holds) << '\n';
  }
}

/// Reads the CSV written by write_reports_csv; fields not in the CSV keep their defaults.
inline std::vector<BoundReport> read_reports_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) throw DomainError("unexpected CSV header");
  std::vector<BoundReport> out;
  auto num = [](const std::string& s) { return std::strtod(s.c_str(), nullptr); };
  auto boolean = [](const std::string& s) {
    if (s == "true") return true;
    if (s == "false") return false;
    throw DomainError("bad boolean '" + s + "'");
  };
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 15) throw DomainError("CSV row has " + std::to_string(f.size()) + " fields, expected 15");
    BoundReport r;
    r.m = std::stoi(f[0]);
    r.p = parse_ext_real(f[1]);
    r.rho.rho = num(f[2]);
    r.lower_001 = num(f[3]);
    if (!f[4].empty()) r.lower_step4 = num(f[4]);
    r.quotient.value = num(f[5]);
    r.quotient.certified = boolean(f[6]);
    r.t2_norm.lower = num(f[7]);
    r.t2_norm.upper = num(f[8]);
    r.quotient.norm_upper = num(f[9]);
    if (!f[10].empty()) r.quotient_interpolation = LowerBound{.value = num(f[10])};
    r.interpolation_contradicted = boolean(f[11]);
    r.upper_known = num(f[12]);
    r.best_lower = num(f[13]);
    r.theorem_pop_holds = boolean(f[14]);
    out.push_back(r);
  }
  return out;
}

}  // namespace hlb
