#pragma once

// Operator norms of multilinear forms on products of unit p-spheres.
//
//   * certified enclosure of ‖T_{2,p}‖ for finite p ≥ 4 (two-chart grid + Lipschitz margin)
//   * exact norms at p = infinity by enumerating extreme points of the cube
//   * lower bounds for any form by alternating (block-coordinate) ascent
//   * upper-bound combiners: two-endpoint interpolation and the T_m recursion

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hlb/closed_forms.hpp"
#include "hlb/errors.hpp"
#include "hlb/extended_real.hpp"
#include "hlb/forms.hpp"

namespace hlb {

enum class NormMethod {
  none,
  two_chart_grid,      // grid + Lipschitz enclosure on the 2-D sphere
  extreme_points,      // exact enumeration of ±1 vectors (p = infinity)
  alternating_ascent,  // feasible point from block ascent
  interpolation,       // geometric mean of endpoint norms, constant-1 hypothesis
  recursion,           // ‖T_m‖ ≤ 2^{m-2} ‖T_2‖
  restriction,         // ‖T_m‖ ≥ ‖T_2‖ by restricting to a sub-block
};

inline std::string to_string(NormMethod m) {
  switch (m) {
    case NormMethod::none: return "none";
    case NormMethod::two_chart_grid: return "two_chart_grid";
    case NormMethod::extreme_points: return "extreme_points";
    case NormMethod::alternating_ascent: return "alternating_ascent";
    case NormMethod::interpolation: return "interpolation";
    case NormMethod::recursion: return "recursion";
    case NormMethod::restriction: return "restriction";
  }
  return "none";
}

inline NormMethod norm_method_from_string(const std::string& s) {
  for (auto m : {NormMethod::none, NormMethod::two_chart_grid, NormMethod::extreme_points,
                 NormMethod::alternating_ascent, NormMethod::interpolation, NormMethod::recursion,
                 NormMethod::restriction})
    if (to_string(m) == s) return m;
  throw DomainError("unknown norm method '" + s + "'");
}

/// Bracket lower ≤ ‖A‖ ≤ upper.
///
/// certified_upper: upper comes from an enclosure, an exact enumeration, or a proven
/// combiner applied to certified input. conditional: upper relies on real-scalar
/// interpolation with constant 1, which is not a theorem.
struct NormEstimate {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  NormMethod method_lower = NormMethod::none;
  NormMethod method_upper = NormMethod::none;
  // Method behind the T_2 bound when upper was lifted by the recursion.
  NormMethod base_method_upper = NormMethod::none;
  bool certified_upper = false;
  bool conditional = false;

  double width() const { return upper - lower; }
  double center() const { return 0.5 * (upper + lower); }
};

// ---------------------------------------------------------------------------
// The T_{2,p} objective
// ---------------------------------------------------------------------------

/// Larger coordinate (1 - x^p)^{1/p} of the nonnegative unit p-sphere point with smaller coordinate x.
inline double sphere_partner(double x, double p) {
  const double xp = std::pow(x, p);
  return xp >= 1.0 ? 0.0 : std::pow(1.0 - xp, 1.0 / p);
}

/// ‖(a + b, a - b)‖_q, the norm of T_2(z, ·) as a functional when z = (a, b).
inline double t2_functional_norm(double a, double b, double q) {
  const double u = std::abs(a + b);
  const double v = std::abs(a - b);
  const double big = std::max(u, v);
  if (big == 0.0) return 0.0;
  return big * std::pow(std::pow(u / big, q) + std::pow(v / big, q), 1.0 / q);
}

struct FgValues {
  double f;
  double g;
};

/// f and g for general p: both are ‖(x+y, ±(y-x))‖_{p*} with y = (1 - x^p)^{1/p}.
/// f uses y - x, g uses x - y; absolute values make both defined on all of [0, 1].
inline FgValues eval_fg_p(double x, double p) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("f/g are defined on [0, 1]");
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("f/g need a finite p > 1");
  const double q = p / (p - 1.0);
  const double y = sphere_partner(x, p);
  const double s = std::pow(x + y, q);
  const double f = std::pow(s + std::pow(std::abs(y - x), q), 1.0 / q);
  const double g = std::pow(s + std::pow(std::abs(x - y), q), 1.0 / q);
  return {f, g};
}

inline double eval_f(double x) { return eval_fg_p(x, 4.0).f; }
inline double eval_g(double x) { return eval_fg_p(x, 4.0).g; }

/// Split point 2^{-1/p} where the two coordinates of the sphere point coincide.
inline double chart_split(double p) { return std::exp2(-1.0 / p); }

struct T2CertifyOptions {
  int initial_level = 6;                        // first grid has 2^level + 1 points per chart
  std::uint64_t max_points_per_chart = 1u << 27;
  double lipschitz = 4.0;                       // |F(z) - F(w)| ≤ L ‖z - w‖_p
  double rounding_slack = 1e-12;                // relative allowance for floating evaluation error
};

/// Certified bracket for ‖T_{2,p}‖ = sup_{‖z‖_p = 1} ‖(z1 + z2, z1 - z2)‖_{p*}.
///
/// The objective is invariant under sign flips and the swap of z1, z2, so the
/// nonnegative quadrant suffices. It is covered by two charts, each parameterized by
/// the smaller coordinate t ∈ [0, 2^{-1/p}]; there |d/dt (1 - t^p)^{1/p}| ≤ 1, so moving
/// t by h moves z by at most 2h in ℓ_1 ⊇ ℓ_p distance. With nested dyadic grids of step
/// h the enclosure is [max over grid, max over grid + L·2h]. Refinement stops once the
/// width is ≤ target_gap; the upper value is the minimum over all levels visited.
inline NormEstimate norm_upper_T2p_certified(double p, double target_gap, const T2CertifyOptions& opt = {}) {
  if (!std::isfinite(p)) throw DomainError("certified T_2 enclosure needs finite p (use norm_exact_linf at infinity)");
  if (p < 4.0) throw DomainError("certified T_2 enclosure is for p >= 4, got " + format_number(p));
  if (!(target_gap > 0.0)) throw DomainError("target_gap must be positive");

  const double q = p / (p - 1.0);
  const double split = chart_split(p);
  auto chart_max = [&](double t) {
    const double y = sphere_partner(t, p);
    // chart 1: z = (t, y); chart 2: z = (y, t)
    return std::max(t2_functional_norm(t, y, q), t2_functional_norm(y, t, q));
  };

  // the margin alone must fit in the gap: L·2h ≤ gap with h = split / n
  const double needed = opt.lipschitz * 2.0 * split / target_gap;
  if (needed + 1.0 > static_cast<double>(opt.max_points_per_chart))
    throw CertificationError("T_2 enclosure: gap " + format_number(target_gap) + " needs more than " +
                             std::to_string(opt.max_points_per_chart) + " grid points per chart");

  double best = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  int level = std::max(opt.initial_level, 1);
  std::uint64_t n = std::uint64_t{1} << level;
  for (std::uint64_t i = 0; i <= n; ++i) best = std::max(best, chart_max(split * static_cast<double>(i) / static_cast<double>(n)));

  for (;;) {
    const double h = split / static_cast<double>(n);
    const double margin = opt.lipschitz * 2.0 * h;
    upper = std::min(upper, best * (1.0 + opt.rounding_slack) + margin);
    if (upper - best <= target_gap) break;
    if (2 * n + 1 > opt.max_points_per_chart)
      throw CertificationError("T_2 enclosure: gap " + format_number(target_gap) + " needs more than " +
                               std::to_string(opt.max_points_per_chart) + " grid points per chart");
    n *= 2;
    ++level;
    for (std::uint64_t i = 1; i < n; i += 2)
      best = std::max(best, chart_max(split * static_cast<double>(i) / static_cast<double>(n)));
  }

  NormEstimate est;
  est.lower = best;
  est.upper = upper;
  est.method_lower = NormMethod::two_chart_grid;
  est.method_upper = NormMethod::two_chart_grid;
  est.base_method_upper = NormMethod::two_chart_grid;
  est.certified_upper = true;
  est.conditional = false;
  return est;
}

// ---------------------------------------------------------------------------
// p = infinity
// ---------------------------------------------------------------------------

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 24;

/// Exact ‖A‖ on (ℓ_∞)^m.
///
/// |A| is convex in each slot, so the sup is attained at ±1 vectors. One slot (the
/// widest) is left free and contributes ‖c‖_1; the first coordinate of another slot is
/// fixed to +1 by the global sign symmetry. The remaining sign bits are enumerated.
inline double norm_exact_linf(const SparseMultilinearForm& form, std::uint64_t cap = kDefaultEnumerationCap) {
  const std::size_t a = form.arity();
  if (a == 0) throw DomainError("empty form");
  const auto dims = form.dims();
  const std::size_t free_slot =
      static_cast<std::size_t>(std::distance(dims.begin(), std::max_element(dims.begin(), dims.end())));

  // bit offset for each non-free slot; coordinate 1 of the first non-free slot has no bit
  std::vector<std::int64_t> offset(a, -1);
  std::size_t bits = 0;
  bool pinned = false;
  for (std::size_t k = 0; k < a; ++k) {
    if (k == free_slot) continue;
    offset[k] = static_cast<std::int64_t>(bits) - (pinned ? 0 : 1);
    bits += dims[k] - (pinned ? 0 : 1);
    pinned = true;
  }
  if (bits >= 63 || (std::uint64_t{1} << bits) > cap)
    throw CapExceeded("extreme-point enumeration needs 2^" + std::to_string(bits) + " sign patterns (cap " +
                      std::to_string(cap) + ")");

  const std::size_t nnz = form.nnz();
  std::vector<std::uint64_t> entry_mask(nnz, 0);
  std::vector<Index> entry_col(nnz);
  const auto idx = form.flat_indices();
  for (std::size_t e = 0; e < nnz; ++e) {
    for (std::size_t k = 0; k < a; ++k) {
      const Index j = idx[e * a + k];
      if (k == free_slot) {
        entry_col[e] = j - 1;
      } else {
        const std::int64_t bit = offset[k] + static_cast<std::int64_t>(j) - 1;
        if (bit >= 0) entry_mask[e] ^= std::uint64_t{1} << bit;
      }
    }
  }
  const auto val = form.values();
  std::vector<double> c(dims[free_slot]);
  double best = 0.0;
  const std::uint64_t patterns = std::uint64_t{1} << bits;
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    std::fill(c.begin(), c.end(), 0.0);
    for (std::size_t e = 0; e < nnz; ++e) {
      const double v = (std::popcount(mask & entry_mask[e]) & 1) ? -val[e] : val[e];
      c[entry_col[e]] += v;
    }
    double s = 0.0;
    for (double x : c) s += std::abs(x);
    best = std::max(best, s);
  }
  return best;
}

inline NormEstimate exact_estimate(double value, NormMethod method = NormMethod::extreme_points) {
  NormEstimate est;
  est.lower = est.upper = value;
  est.method_lower = est.method_upper = est.base_method_upper = method;
  est.certified_upper = true;
  return est;
}

// ---------------------------------------------------------------------------
// Alternating ascent
// ---------------------------------------------------------------------------

/// Maximizer of c·x over the unit p-ball, written into x; returns the maximum ‖c‖_{p*}.
/// Leaves x unchanged when c = 0.
inline double norming_vector(std::span<const double> c, ExtReal p, std::span<double> x) {
  const std::size_t n = c.size();
  if (p.is_infinite()) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = c[j] < 0.0 ? -1.0 : 1.0;
      s += std::abs(c[j]);
    }
    return s;
  }
  const double pv = p.value();
  if (pv == 1.0) {
    std::size_t arg = 0;
    for (std::size_t j = 1; j < n; ++j)
      if (std::abs(c[j]) > std::abs(c[arg])) arg = j;
    if (c[arg] == 0.0) return 0.0;
    std::fill(x.begin(), x.end(), 0.0);
    x[arg] = c[arg] < 0.0 ? -1.0 : 1.0;
    return std::abs(c[arg]);
  }
  const ExtReal q(pv / (pv - 1.0));
  const double cn = VectorP::p_norm(c, q);
  if (cn == 0.0) return 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double r = std::abs(c[j]) / cn;
    x[j] = std::copysign(std::pow(r, q.value() - 1.0), c[j]);
  }
  return cn;
}

struct AscentOptions {
  int restarts = 32;
  double tol = 1e-10;  // relative improvement per sweep
  int max_iter = 1000;  // sweeps per restart
  std::uint64_t seed = 0;
};

struct AscentRun {
  double value = 0.0;                       // |A(x)| at the final feasible point
  std::vector<std::vector<double>> point;
  std::vector<double> history;              // objective after every slot update
  int sweeps = 0;
};

struct AscentResult {
  double value = 0.0;
  std::vector<std::vector<double>> point;
  int best_restart = -1;
};

namespace detail {

/// Uniform double in [-1, 1) from raw engine output, independent of the standard library's distributions.
inline double uniform_pm1(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-52 - 1.0;
}

inline std::uint64_t restart_seed(std::uint64_t seed, int restart) {
  return seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(restart) * 0xBF58476D1CE4E5B9ull + 1;
}

}  // namespace detail

/// Random start on the product of unit p-spheres.
inline std::vector<std::vector<double>> random_sphere_point(const SparseMultilinearForm& form, ExtReal p,
                                                            std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::vector<std::vector<double>> x(form.arity());
  for (std::size_t k = 0; k < x.size(); ++k) {
    x[k].resize(form.dims()[k]);
    double nrm = 0.0;
    while (nrm == 0.0) {
      for (double& v : x[k]) v = detail::uniform_pm1(eng);
      nrm = VectorP::p_norm(x[k], p);
    }
    for (double& v : x[k]) v /= nrm;
  }
  return x;
}

/// One ascent run from a given start. Each slot update replaces x^(k) by the norming
/// vector of its coefficient vector, so the objective never decreases.
inline AscentRun alternating_ascent_run(const SparseMultilinearForm& form, ExtReal p,
                                        std::vector<std::vector<double>> start, const AscentOptions& opt = {}) {
  AscentRun run;
  run.point = std::move(start);
  const std::span<const std::vector<double>> args(run.point);
  double prev = evaluate(form, args);
  run.history.push_back(prev);
  for (int it = 0; it < opt.max_iter; ++it) {
    double cur = prev;
    for (std::size_t k = 0; k < form.arity(); ++k) {
      const auto c = partial_coefficients(form, args, k);
      const double v = norming_vector(c, p, run.point[k]);
      if (v > 0.0) cur = v;
      run.history.push_back(cur);
    }
    ++run.sweeps;
    const bool done = cur - prev <= opt.tol * std::max(1.0, std::abs(prev));
    prev = cur;
    if (done) break;
  }
  // exact renormalization so the reported value is attained at a feasible point
  for (auto& xk : run.point) {
    const double nrm = VectorP::p_norm(xk, p);
    if (nrm > 0.0)
      for (double& v : xk) v /= nrm;
  }
  run.value = std::abs(evaluate(form, args));
  return run;
}

/// Lower bound on ‖A‖ over (ℓ_p)^m: best of `restarts` seeded ascent runs.
inline AscentResult norm_lower_alternating(const SparseMultilinearForm& form, ExtReal p, const AscentOptions& opt = {}) {
  if (p.is_finite() && !(p.value() >= 1.0)) throw DomainError("norm_lower_alternating needs p >= 1");
  AscentResult best;
  for (int r = 0; r < std::max(opt.restarts, 1); ++r) {
    auto run = alternating_ascent_run(form, p, random_sphere_point(form, p, detail::restart_seed(opt.seed, r)), opt);
    if (run.value > best.value || best.best_restart < 0) {
      best.value = run.value;
      best.point = std::move(run.point);
      best.best_restart = r;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Combiners
// ---------------------------------------------------------------------------

/// ‖T_{2,p}‖ ≤ ‖T_{2,4}‖^{1-θ} ‖T_{2,∞}‖^θ < 1.74^{4/p} 2^{(p-4)/p}, θ = (p-4)/p.
/// Holds only under real-scalar interpolation with constant 1, hence conditional.
inline NormEstimate norm_upper_interpolation(ExtReal p) {
  if (p < 4.0) throw DomainError("interpolation bound needs p >= 4");
  NormEstimate est;
  est.method_upper = est.base_method_upper = NormMethod::interpolation;
  est.certified_upper = false;
  est.conditional = true;
  if (p.is_infinite()) {
    est.upper = 2.0;
  } else {
    const double pv = p.value();
    est.upper = std::pow(kT24Bound, 4.0 / pv) * std::exp2((pv - 4.0) / pv);
  }
  return est;
}

/// ‖T_{m,p}‖ ≤ 2^{m-2} ‖T_{2,p}‖, and ‖T_{m,p}‖ ≥ ‖T_{2,p}‖ by restriction to a sub-block.
inline NormEstimate norm_upper_recursion(int m, const NormEstimate& t2) {
  if (m < 2) throw DomainError("recursion needs m >= 2");
  if (m == 2) return t2;
  NormEstimate est = t2;
  est.upper = std::ldexp(t2.upper, m - 2);
  est.method_upper = NormMethod::recursion;
  est.base_method_upper = t2.method_upper == NormMethod::recursion ? t2.base_method_upper : t2.method_upper;
  if (t2.method_lower != NormMethod::none) est.method_lower = NormMethod::restriction;
  return est;
}

}  // namespace hlb
