#pragma once

// Lower bounds for the real Hardy–Littlewood constants C_{m,p}.
//
// The quotient route: for any m-linear form A, HL_sum(A) ≤ C_{m,p} ‖A‖, so
// HL_sum(A) / U ≤ C_{m,p} whenever U ≥ ‖A‖. With A = T_m, HL_sum is (4^{m-1})^{1/rho}
// and U comes from a certified enclosure of ‖T_{2,p}‖ lifted by the recursion.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "hlb/closed_forms.hpp"
#include "hlb/errors.hpp"
#include "hlb/forms.hpp"
#include "hlb/norm_engine.hpp"

namespace hlb {

struct LowerBound {
  double value = 0.0;
  bool certified = false;
  bool conditional = false;
  NormMethod norm_method = NormMethod::none;       // method of the norm upper bound used
  NormMethod base_norm_method = NormMethod::none;  // T_2 method behind a recursion lift
  double norm_upper = 0.0;
};

/// HL_sum(form) / norm_upper.upper, carrying over the certification flags.
inline LowerBound quotient_lower_bound(const SparseMultilinearForm& form, const HLParams& params,
                                       const NormEstimate& norm_upper) {
  if (form.nnz() == 0) throw DomainError("quotient bound of the zero form is undefined");
  if (!(norm_upper.upper > 0.0) || !std::isfinite(norm_upper.upper))
    throw DomainError("quotient bound needs a finite positive norm upper bound");
  if (form.arity() != static_cast<std::size_t>(params.m)) throw DomainError("form arity does not match m");
  const Exponent e = hl_exponent(params);
  LowerBound lb;
  lb.value = hl_sum(form, e.rho) / norm_upper.upper;
  lb.certified = norm_upper.certified_upper && !norm_upper.conditional;
  lb.conditional = norm_upper.conditional;
  lb.norm_method = norm_upper.method_upper;
  lb.base_norm_method = norm_upper.base_method_upper;
  lb.norm_upper = norm_upper.upper;
  return lb;
}

struct BoundReport {
  int m = 2;
  ExtReal p = ExtReal(4.0);
  Exponent rho;
  double lower_001 = 1.0;
  std::optional<double> lower_step4;  // conditional closed form, finite p only
  LowerBound quotient;                // certified direct route
  std::optional<LowerBound> quotient_interpolation;  // conditional route
  NormEstimate t2_norm;               // bracket for ‖T_{2,p}‖ used by the direct route
  bool interpolation_contradicted = false;  // certified ‖T_{2,p}‖ lower > interpolated upper
  double upper_known = 0.0;
  double best_lower = 1.0;
  bool theorem_pop_holds = false;
  bool consistent = true;  // best_lower ≤ upper_known (up to 1e-12 relative)
  double gap_used = 0.0;
};

struct ReportOptions {
  double gap = 1e-4;
  // halve the gap until quotient - 1 > 2·(bracket width) or this many halvings
  int max_tightenings = 20;
  T2CertifyOptions certify{};
};

namespace detail {

/// Certified ‖T_{2,p}‖ bracket; exact enumeration at infinity.
inline NormEstimate certified_t2(ExtReal p, double gap, const T2CertifyOptions& opt) {
  if (p.is_infinite()) return exact_estimate(norm_exact_linf(make_T2()));
  return norm_upper_T2p_certified(p.value(), gap, opt);
}

inline constexpr double kConsistencySlack = 1e-12;

}  // namespace detail

/// Every available bound for C_{m,p}.
///
/// best_lower is the max over certified, non-conditional values: lower_001 and the
/// direct quotient. The interpolation quotient and lower_step4 are reported only.
/// When p = 2m the gap is tightened until the quotient clears 1 by twice the bracket width.
inline BoundReport build_report(const HLParams& params, const ReportOptions& opt = {}) {
  params.validate();
  BoundReport r;
  r.m = params.m;
  r.p = params.p;
  r.rho = hl_exponent(params);
  r.lower_001 = lower_bound_001(params);
  if (params.p.is_finite()) r.lower_step4 = lower_bound_step4(params);
  r.upper_known = upper_const_known(params, Field::real);

  // T_m is only materialized for its HL sum, which depends on the entry count alone;
  // beyond the construction cap use the count 4^{m-1} of unit entries directly.
  auto quotient_for = [&](const NormEstimate& t2) {
    const NormEstimate tm = norm_upper_recursion(params.m, t2);
    if (params.m <= 8) return quotient_lower_bound(make_Tm(params.m), params, tm);
    LowerBound lb;
    const double log2_sum = 2.0 * (params.m - 1) / r.rho.rho;  // log2 (4^{m-1})^{1/rho}
    lb.value = std::exp2(log2_sum) / tm.upper;
    lb.certified = tm.certified_upper && !tm.conditional;
    lb.conditional = tm.conditional;
    lb.norm_method = tm.method_upper;
    lb.base_norm_method = tm.base_method_upper;
    lb.norm_upper = tm.upper;
    return lb;
  };

  double gap = opt.gap;
  const bool extreme = params.p.is_finite() && params.p.value() == 2.0 * params.m;
  r.t2_norm = detail::certified_t2(params.p, gap, opt.certify);
  r.quotient = quotient_for(r.t2_norm);
  r.gap_used = gap;
  for (int attempt = 0; extreme && attempt < opt.max_tightenings; ++attempt) {
    if (r.quotient.value - 1.0 > 2.0 * r.t2_norm.width()) break;
    gap *= 0.5;
    try {
      r.t2_norm = detail::certified_t2(params.p, gap, opt.certify);
    } catch (const CertificationError&) {
      break;  // keep the last bracket that was reached
    }
    r.quotient = quotient_for(r.t2_norm);
    r.gap_used = gap;
  }

  const NormEstimate interp = norm_upper_interpolation(params.p);
  r.quotient_interpolation = quotient_for(interp);
  r.interpolation_contradicted = r.t2_norm.lower > interp.upper;

  r.best_lower = r.lower_001;
  if (r.quotient.certified && !r.quotient.conditional) r.best_lower = std::max(r.best_lower, r.quotient.value);
  r.theorem_pop_holds = r.best_lower > 1.0;
  r.consistent = r.best_lower <= r.upper_known * (1.0 + detail::kConsistencySlack);
  return r;
}

/// Certified check of C_{m,2m} > 1 through the quotient route.
/// Throws CertificationError if the quotient does not clear 1.
inline BoundReport verify_theorem_pop(int m, double gap = 1e-4, const ReportOptions& base = {}) {
  if (m < 2) throw DomainError("verify_theorem_pop needs m >= 2");
  ReportOptions opt = base;
  opt.gap = gap;
  BoundReport r = build_report(HLParams::checked(m, ExtReal(2.0 * m)), opt);
  if (!r.quotient.certified || !(r.quotient.value > 1.0))
    throw CertificationError("could not certify C_{" + std::to_string(m) + "," + std::to_string(2 * m) +
                             "} > 1: quotient " + format_number(r.quotient.value));
  return r;
}

}  // namespace hlb
