#pragma once

// Command-line front end. run_cli() is kept separate from main() so the test
// suite can drive every command in-process.
//
// Exit codes: 0 success, 2 usage or domain error, 3 certification failure, 4 I/O error.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "hlb/hlb.hpp"

namespace hlb::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kCertification = 3, kIo = 4 };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Verbosity from HLB_LOG: unset/"quiet" = 0, "info" = 1, "debug" = 2.
inline int log_level() {
  const char* v = std::getenv("HLB_LOG");
  if (!v) return 0;
  const std::string s(v);
  if (s == "debug") return 2;
  if (s == "info") return 1;
  return 0;
}

/// Parses "m=2..10,p=2m,4m". p items: a number, "inf", "<k>m", "<k>m^2", "m^2".
/// Pairs with p < 2m are dropped; duplicates are merged; output is sorted by (m, p).
inline std::vector<HLParams> parse_grid(const std::string& spec) {
  const auto ppos = spec.find("p=");
  if (spec.rfind("m=", 0) != 0 || ppos == std::string::npos) throw DomainError("grid must look like m=A..B,p=...");
  std::string mpart = spec.substr(2, ppos - 2);
  if (!mpart.empty() && mpart.back() == ',') mpart.pop_back();
  int m_lo = 0, m_hi = 0;
  if (const auto dots = mpart.find(".."); dots != std::string::npos) {
    m_lo = std::stoi(mpart.substr(0, dots));
    m_hi = std::stoi(mpart.substr(dots + 2));
  } else {
    m_lo = m_hi = std::stoi(mpart);
  }
  if (m_lo < 2 || m_hi < m_lo) throw DomainError("grid m range must satisfy 2 <= A <= B");

  std::vector<std::string> items;
  std::stringstream ps(spec.substr(ppos + 2));
  for (std::string it; std::getline(ps, it, ',');)
    if (!it.empty()) items.push_back(it);
  if (items.empty()) throw DomainError("grid needs at least one p value");

  auto eval = [](const std::string& item, int m) -> ExtReal {
    if (item == "inf") return ExtReal::infinity();
    const auto mp = item.find('m');
    if (mp == std::string::npos) return parse_ext_real(item);
    const std::string coef = item.substr(0, mp);
    const std::string rest = item.substr(mp + 1);
    const double k = coef.empty() ? 1.0 : parse_ext_real(coef).value();
    if (rest.empty()) return ExtReal(k * m);
    if (rest == "^2" || rest == "2") return ExtReal(k * m * m);
    throw DomainError("bad grid p item '" + item + "'");
  };

  std::vector<HLParams> out;
  for (int m = m_lo; m <= m_hi; ++m)
    for (const auto& item : items) {
      const ExtReal p = eval(item, m);
      if (p < 2.0 * m) continue;
      out.push_back({m, p});
    }
  std::sort(out.begin(), out.end(), [](const HLParams& a, const HLParams& b) {
    return a.m != b.m ? a.m < b.m : a.p < b.p;
  });
  out.erase(std::unique(out.begin(), out.end(), [](const HLParams& a, const HLParams& b) {
              return a.m == b.m && a.p == b.p;
            }),
            out.end());
  return out;
}

/// Resolves --form: "t2", "tm:M", or "file:path".
inline SparseMultilinearForm load_form(const std::string& spec) {
  if (spec == "t2") return make_T2();
  if (spec.rfind("tm:", 0) == 0) return make_Tm(std::stoi(spec.substr(3)));
  if (spec.rfind("file:", 0) == 0) {
    std::ifstream in(spec.substr(5));
    if (!in) throw IoError("cannot open form file '" + spec.substr(5) + "'");
    return read_form(in);
  }
  throw DomainError("unknown form '" + spec + "' (expected t2, tm:M or file:path)");
}

/// Writes to --out if given, otherwise to `out`.
inline void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw IoError("write to '" + path + "' failed");
}

/// x, f, g samples at N+1 equispaced points of [0, 1] plus the split point 2^{-1/p}.
inline std::string plot_csv(double p, int samples) {
  if (samples < 1) throw DomainError("--samples must be >= 1");
  const double split = chart_split(p);
  std::vector<double> xs;
  for (int i = 0; i <= samples; ++i) xs.push_back(static_cast<double>(i) / samples);
  if (std::find(xs.begin(), xs.end(), split) == xs.end()) xs.push_back(split);
  std::sort(xs.begin(), xs.end());
  std::string s = "x,f,g,domain\n";
  for (double x : xs) {
    const auto [f, g] = eval_fg_p(x, p);
    const char* dom = x < split ? "f" : (x == split ? "split" : "g");
    s += format_number(x) + "," + format_number(f) + "," + format_number(g) + "," + dom + "\n";
  }
  return s;
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified lower bounds for the real Hardy-Littlewood constants", "hlbounds"};
  app.require_subcommand(1);

  // exponent
  int exp_m = 0;
  std::string exp_p;
  auto* exponent = app.add_subcommand("exponent", "Print the Hardy-Littlewood exponent rho and its conjugate");
  exponent->add_option("--m", exp_m, "arity m >= 2")->required();
  exponent->add_option("--p", exp_p, "exponent p >= 2m or inf")->required();

  // bounds
  int b_m = 0;
  std::string b_p, b_grid, b_format = "table", b_out;
  double b_gap = 1e-4;
  auto* bounds = app.add_subcommand("bounds", "Every known bound for C_{m,p}");
  bounds->add_option("--m", b_m, "arity m >= 2");
  bounds->add_option("--p", b_p, "exponent p >= 2m or inf");
  bounds->add_option("--grid", b_grid, "grid such as m=2..10,p=2m,4m");
  bounds->add_option("--format", b_format, "table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  bounds->add_option("--out", b_out, "output path (default stdout)");
  bounds->add_option("--gap", b_gap, "certification gap for the T_2 enclosure");

  // norm
  std::string n_form = "t2", n_p;
  bool n_certify = false;
  double n_gap = 1e-4;
  int n_restarts = 32;
  std::uint64_t n_seed = 0;
  auto* norm = app.add_subcommand("norm", "Bound the operator norm of a form");
  norm->add_option("--form", n_form, "t2, tm:M or file:path");
  norm->add_option("--p", n_p, "exponent p >= 1 or inf")->required();
  norm->add_flag("--certify", n_certify, "certified upper bound (t2 / tm:M, finite p >= 4)");
  norm->add_option("--gap", n_gap, "bracket width target");
  norm->add_option("--restarts", n_restarts, "ascent restarts");
  norm->add_option("--seed", n_seed, "ascent seed");

  // plotdata
  double pl_p = 4.0;
  int pl_samples = 200;
  std::string pl_out;
  auto* plot = app.add_subcommand("plotdata", "CSV samples of f and g");
  plot->add_option("--p", pl_p, "exponent p > 1");
  plot->add_option("--samples", pl_samples, "number of intervals on [0, 1]");
  plot->add_option("--out", pl_out, "output path (default stdout)");

  // verify
  int v_max_m = 10;
  double v_gap = 1e-4;
  auto* verify = app.add_subcommand("verify", "Certify C_{m,2m} > 1 for m = 2..M");
  verify->add_option("--max-m", v_max_m, "largest m");
  verify->add_option("--gap", v_gap, "initial certification gap");

  // form dump
  std::string f_form = "t2", f_out;
  auto* form = app.add_subcommand("form", "Form utilities");
  form->require_subcommand(1);
  auto* dump = form->add_subcommand("dump", "Write a form in the canonical text format");
  dump->add_option("--form", f_form, "t2, tm:M or file:path");
  dump->add_option("--out", f_out, "output path (default stdout)");

  std::vector<std::string> owned{"hlbounds"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : owned) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  const int verbosity = log_level();
  try {
    if (*exponent) {
      const auto e = hl_exponent(HLParams::checked(exp_m, parse_ext_real(exp_p)));
      out << "rho=" << format_number(e.rho) << '\n' << "dual_rho=" << format_number(e.dual_rho) << '\n';
      return kOk;
    }

    if (*bounds) {
      std::vector<HLParams> pairs;
      if (!b_grid.empty()) {
        if (b_m != 0 || !b_p.empty()) throw DomainError("use either --grid or --m/--p");
        pairs = parse_grid(b_grid);
      } else {
        if (b_m == 0 || b_p.empty()) throw DomainError("bounds needs --m and --p, or --grid");
        pairs.push_back(HLParams::checked(b_m, parse_ext_real(b_p)));
      }
      ReportOptions opt;
      opt.gap = b_gap;
      std::vector<BoundReport> reports;
      for (const auto& pr : pairs) {
        if (verbosity >= 1) err << "[info] report m=" << pr.m << " p=" << format_number(pr.p) << '\n';
        reports.push_back(build_report(pr, opt));
      }
      std::ostringstream text;
      if (b_format == "json") {
        text << reports_to_json(reports);
      } else if (b_format == "csv") {
        write_reports_csv(text, reports);
      } else {
        for (std::size_t i = 0; i < reports.size(); ++i) {
          if (i) text << '\n';
          write_report_text(text, reports[i]);
        }
      }
      emit(b_out, text.str(), out);
      return kOk;
    }

    if (*norm) {
      const ExtReal p = parse_ext_real(n_p);
      const auto A = load_form(n_form);
      if (p.is_infinite()) {
        out << "norm=" << format_number(norm_exact_linf(A)) << " (exact)\n" << "method=extreme_points\n";
        return kOk;
      }
      AscentOptions aopt;
      aopt.restarts = n_restarts;
      aopt.seed = n_seed;
      if (n_certify) {
        const int m = static_cast<int>(A.arity());
        if (n_form.rfind("file:", 0) == 0) throw DomainError("--certify supports the t2 and tm:M forms only");
        NormEstimate est = norm_upper_recursion(m, norm_upper_T2p_certified(p.value(), n_gap));
        if (m > 2) {
          est.lower = norm_lower_alternating(A, p, aopt).value;
          est.method_lower = NormMethod::alternating_ascent;
        }
        out << "lower=" << format_number(est.lower) << '\n'
            << "upper=" << format_number(est.upper) << '\n'
            << "width=" << format_number(est.width()) << '\n'
            << "certified=" << (est.certified_upper ? "true" : "false") << '\n'
            << "method_lower=" << to_string(est.method_lower) << '\n'
            << "method_upper=" << to_string(est.method_upper) << '\n';
        if (m == 2 && p.value() == 4.0)
          out << "sqrt3_distance=" << format_number(std::abs(est.center() - std::numbers::sqrt3))
              << " (conjectured value sqrt(3), not asserted)\n";
        return kOk;
      }
      const auto r = norm_lower_alternating(A, p, aopt);
      out << "lower=" << format_number(r.value) << '\n'
          << "method=alternating_ascent, restarts=" << n_restarts << ", seed=" << n_seed << '\n';
      return kOk;
    }

    if (*plot) {
      emit(pl_out, plot_csv(pl_p, pl_samples), out);
      return kOk;
    }

    if (*verify) {
      if (v_max_m < 2) throw DomainError("--max-m must be >= 2");
      for (int m = 2; m <= v_max_m; ++m) {
        const auto r = verify_theorem_pop(m, v_gap);
        out << "m=" << m << " p=" << 2 * m << " quotient=" << format_number(r.quotient.value)
            << " t2_upper=" << format_number(r.t2_norm.upper) << " gap=" << format_number(r.gap_used)
            << " certified=" << (r.quotient.certified ? "true" : "false") << '\n';
      }
      out << "pop holds for m=2.." << v_max_m << '\n';
      return kOk;
    }

    if (*dump) {
      emit(f_out, form_to_text(load_form(f_form)), out);
      return kOk;
    }
  } catch (const CertificationError& e) {
    err << "certification failure: " << e.what() << '\n';
    return kCertification;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const std::logic_error& e) {  // DomainError, CapExceeded, std::invalid_argument from stoi
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace hlb::cli
