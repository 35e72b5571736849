#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>

#include "hlb/errors.hpp"

namespace hlb {

/// A real number or the symbolic value +infinity.
///
/// Exponents such as p and its conjugate are carried in this type so that
/// p = infinity is never approximated by a large finite value. Formulas branch
/// on is_infinite() and use their exact limiting forms.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  constexpr explicit ExtReal(double finite) : value_(finite) {}

  static constexpr ExtReal infinity() {
    ExtReal r;
    r.infinite_ = true;
    return r;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  /// Finite value; throws for infinity.
  double value() const {
    if (infinite_) throw DomainError("ExtReal::value() called on infinity");
    return value_;
  }

  /// IEEE representation (inf for the symbolic infinity), for output only.
  double as_double() const { return infinite_ ? HUGE_VAL : value_; }

  friend constexpr bool operator==(const ExtReal& a, const ExtReal& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr bool operator<(const ExtReal& a, const ExtReal& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend constexpr bool operator<(const ExtReal& a, double b) { return !a.infinite_ && a.value_ < b; }
  friend constexpr bool operator<=(const ExtReal& a, double b) { return !a.infinite_ && a.value_ <= b; }
  friend constexpr bool operator>(const ExtReal& a, double b) { return a.infinite_ || a.value_ > b; }
  friend constexpr bool operator>=(const ExtReal& a, double b) { return a.infinite_ || a.value_ >= b; }

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

/// Fixed 15-significant-digit rendering used for every numeric output.
inline std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

inline std::string format_number(const ExtReal& x) {
  return x.is_infinite() ? std::string("inf") : format_number(x.value());
}

/// Value as it reads back after format_number; makes serialized output idempotent.
inline double round_to_output(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_number(x).c_str(), nullptr);
}

/// Parses "inf", "infinity", "∞" or a decimal number.
inline ExtReal parse_ext_real(std::string_view text) {
  std::string s(text);
  if (s == "inf" || s == "+inf" || s == "infinity" || s == "Inf" || s == "INF" || s == "∞")
    return ExtReal::infinity();
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
    throw DomainError("not a number or 'inf': '" + s + "'");
  return ExtReal(v);
}

}  // namespace hlb
