#pragma once

// Closed-form quantities attached to the real Hardy–Littlewood inequality:
// the mixed-sum exponent, the explicit lower bounds for C_{m,p}, the known
// upper bounds for C_{m,p} in both fields, and the Gamma function they need.

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "hlb/errors.hpp"
#include "hlb/extended_real.hpp"

namespace hlb {

/// Arity m and exponent p of an inequality instance. p may be infinite.
struct HLParams {
  int m = 2;
  ExtReal p = ExtReal(4.0);

  /// Throws DomainError unless m ≥ 2 and (p infinite or p ≥ 2m).
  void validate() const {
    if (m < 2) throw DomainError("arity m must be >= 2, got " + std::to_string(m));
    if (p.is_finite()) {
      const double pv = p.value();
      if (!std::isfinite(pv) || pv < 2.0 * m)
        throw DomainError("exponent p must be >= 2m = " + std::to_string(2 * m) + ", got " +
                          format_number(pv));
    }
  }

  static HLParams checked(int m, ExtReal p) {
    HLParams r{m, p};
    r.validate();
    return r;
  }
};

struct Exponent {
  double rho = 2.0;
  double dual_rho = 2.0;
};

enum class Field { real, complex };

/// Conjugate exponent q/(q-1); 1 for q = infinity.
inline double dual_exponent(ExtReal q) {
  if (q.is_infinite()) return 1.0;
  const double v = q.value();
  if (!(v > 1.0)) throw DomainError("dual exponent needs q > 1, got " + format_number(v));
  return v / (v - 1.0);
}

/// Conjugate of a finite exponent as an ExtReal (1 ↦ infinity).
inline ExtReal dual_exponent_ext(ExtReal q) {
  if (q.is_infinite()) return ExtReal(1.0);
  const double v = q.value();
  if (v == 1.0) return ExtReal::infinity();
  return ExtReal(dual_exponent(q));
}

/// rho = 2mp / (mp + p - 2m), with the Bohnenblust–Hille limit 2m/(m+1) at p = infinity.
inline Exponent hl_exponent(const HLParams& params) {
  params.validate();
  const double m = params.m;
  double rho;
  if (params.p.is_infinite()) {
    rho = 2.0 * m / (m + 1.0);
  } else {
    const double p = params.p.value();
    rho = 2.0 * m * p / (m * p + p - 2.0 * m);
  }
  return {rho, dual_exponent(ExtReal(rho))};
}

/// 2^{(mp + 2m - 2m² - p)/(mp)}; 2^{1-1/m} at p = infinity. Equals 1 at p = 2m.
inline double lower_bound_001(const HLParams& params) {
  params.validate();
  const double m = params.m;
  if (params.p.is_infinite()) return std::exp2(1.0 - 1.0 / m);
  const double p = params.p.value();
  return std::exp2((m * p + 2.0 * m - 2.0 * m * m - p) / (m * p));
}

/// Upper bound used for ‖T_{2,4}‖ in the interpolation route, kept as the exact rational 174/100.
inline constexpr double kT24Bound = 174.0 / 100.0;

/// 2^{(mp + (6 - 4 log2 1.74) m - 2m² - p)/(mp)} for finite p ≥ 4.
///
/// This is the closed form of HL sum over the interpolated norm bound, so it inherits the
/// conditional status of that bound. It increases to 2^{1-1/m} from below as p grows.
inline double lower_bound_step4(const HLParams& params) {
  params.validate();
  if (params.p.is_infinite()) throw DomainError("lower_bound_step4 is defined for finite p only");
  const double m = params.m;
  const double p = params.p.value();
  if (p < 4.0) throw DomainError("lower_bound_step4 needs p >= 4");
  const double c = 6.0 - 4.0 * std::log2(kT24Bound);
  return std::exp2((m * p + c * m - 2.0 * m * m - p) / (m * p));
}

namespace detail {

// Lanczos approximation, g = 7, nine terms (Godfrey's coefficients).
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace detail

/// Gamma function for x > 0. Relative error around 1e-15 on [0.5, 50].
inline double gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("gamma needs a finite x > 0");
  if (x < 0.5) {
    // reflection
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma(1.0 - x));
  }
  const double z = x - 1.0;
  double a = detail::kLanczosCoeffs[0];
  const double t = z + detail::kLanczosG + 0.5;
  for (std::size_t i = 1; i < detail::kLanczosCoeffs.size(); ++i)
    a += detail::kLanczosCoeffs[i] / (z + static_cast<double>(i));
  // split t^{z+0.5} to keep the intermediate finite for large x
  const double half = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * a;
}

/// Known upper bounds for C_{m,p} in the given field.
///
/// Real scalars use the product of 2^{1/(2j-2)} for m ≤ 13 and the Gamma product from
/// j = 14 for m ≥ 14. At p = infinity the first factor drops out and the second is taken
/// with exponent 1.
inline double upper_const_known(const HLParams& params, Field field) {
  params.validate();
  const int m = params.m;
  const double md = m;
  double first_exp = 0.0;   // 2m(m-1)/p
  double second_exp = 1.0;  // (p-2m)/p
  if (params.p.is_finite()) {
    const double p = params.p.value();
    first_exp = 2.0 * md * (md - 1.0) / p;
    second_exp = (p - 2.0 * md) / p;
  }
  const double sqrt_pi = std::sqrt(std::numbers::pi);

  if (field == Field::complex) {
    double prod = 1.0;
    for (int j = 2; j <= m; ++j) {
      const double jd = j;
      prod *= std::pow(gamma(2.0 - 1.0 / jd), jd / (2.0 - 2.0 * jd));
    }
    return std::pow(2.0 / sqrt_pi, first_exp) * std::pow(prod, second_exp);
  }

  double prod = 1.0;
  if (m >= 14) {
    prod = std::exp2(446381.0 / 55440.0 - md / 2.0);
    for (int j = 14; j <= m; ++j) {
      const double jd = j;
      prod *= std::pow(gamma(1.5 - 1.0 / jd) / sqrt_pi, jd / (2.0 - 2.0 * jd));
    }
  } else {
    double e = 0.0;
    for (int j = 2; j <= m; ++j) e += 1.0 / (2.0 * j - 2.0);
    prod = std::exp2(e);
  }
  return std::pow(std::numbers::sqrt2, first_exp) * std::pow(prod, second_exp);
}

}  // namespace hlb
