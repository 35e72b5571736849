#pragma once

// Brute-force references used to validate the norm engine and the T_m
// construction. Nothing here is used by the production pipeline.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "hlb/errors.hpp"
#include "hlb/extended_real.hpp"
#include "hlb/forms.hpp"

namespace hlb::oracle {

inline constexpr std::uint64_t kDefaultGridCap = 100'000'000;

/// Points of the boundary of [-1, 1]^d with coordinates on the dyadic lattice of the
/// given step, normalized to the unit p-sphere. Halving the step gives a superset.
inline std::vector<std::vector<double>> sphere_grid(std::size_t dim, double step, ExtReal p) {
  const auto per_side = static_cast<std::int64_t>(std::llround(2.0 / step)) + 1;
  std::vector<std::vector<double>> pts;
  std::vector<std::int64_t> ctr(dim, 0);
  for (;;) {
    std::vector<double> x(dim);
    bool on_boundary = false;
    for (std::size_t i = 0; i < dim; ++i) {
      x[i] = -1.0 + static_cast<double>(ctr[i]) * step;
      if (ctr[i] == 0 || ctr[i] == per_side - 1) on_boundary = true;
    }
    if (on_boundary) {
      const double nrm = VectorP::p_norm(x, p);
      for (double& v : x) v /= nrm;
      pts.push_back(std::move(x));
    }
    std::size_t i = 0;
    while (i < dim && ++ctr[i] == per_side) ctr[i++] = 0;
    if (i == dim) break;
  }
  return pts;
}

/// Max of |A| over a product of sphere grids. The grid step is the largest power of
/// two not exceeding `resolution`, so refining the resolution refines the grid.
/// A lower bound on ‖A‖ that converges to it as resolution → 0.
inline double brute_norm_grid(const SparseMultilinearForm& form, ExtReal p, double resolution,
                              std::uint64_t cap = kDefaultGridCap) {
  if (!(resolution > 0.0) || resolution > 1.0) throw DomainError("resolution must be in (0, 1]");
  const double step = std::exp2(std::floor(std::log2(resolution)));
  const std::size_t a = form.arity();
  std::vector<std::vector<std::vector<double>>> grids;
  double total = 1.0;
  for (std::size_t k = 0; k < a; ++k) {
    // estimate before building: boundary points ≈ n^d - (n-2)^d
    const double n = 2.0 / step + 1.0;
    const double d = static_cast<double>(form.dims()[k]);
    const double approx = std::pow(n, d) - std::pow(std::max(n - 2.0, 0.0), d);
    total *= approx * (k + 1 == a ? d : 1.0);
    if (total > static_cast<double>(cap)) throw CapExceeded("grid oracle exceeds evaluation cap");
    grids.push_back(sphere_grid(form.dims()[k], step, p));
  }

  // odometer over slots 0..a-2; last slot handled by a direct scan
  std::vector<std::size_t> pos(a, 0);
  std::vector<std::vector<double>> args(a);
  double best = 0.0;
  for (;;) {
    for (std::size_t k = 0; k + 1 < a; ++k) args[k] = grids[k][pos[k]];
    args[a - 1] = std::vector<double>(form.dims()[a - 1], 0.0);
    const auto c = partial_coefficients(form, args, a - 1);
    for (const auto& y : grids[a - 1]) {
      double s = 0.0;
      for (std::size_t j = 0; j < y.size(); ++j) s += c[j] * y[j];
      best = std::max(best, std::abs(s));
    }
    std::size_t k = 0;
    while (k + 1 < a && ++pos[k] == grids[k].size()) pos[k++] = 0;
    if (k + 1 >= a) break;
  }
  return best;
}

/// A polynomial in variables x^(slot)_index, as monomial → coefficient.
/// A monomial is a sorted list of (slot, index) pairs with multiplicity.
using Variable = std::pair<int, Index>;
using Monomial = std::vector<Variable>;
using Polynomial = std::map<Monomial, double>;

inline Polynomial multiply(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Monomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      std::sort(m.begin(), m.end());
      out[m] += ca * cb;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0.0; });
  return out;
}

inline Polynomial add(Polynomial a, const Polynomial& b) {
  for (const auto& [m, c] : b) a[m] += c;
  std::erase_if(a, [](const auto& kv) { return kv.second == 0.0; });
  return a;
}

inline Polynomial variable(int slot, Index j) { return Polynomial{{Monomial{{slot, j}}, 1.0}}; }

/// Replaces every variable by a polynomial and expands.
template <class Subst>
Polynomial substitute(const Polynomial& poly, Subst&& subst) {
  Polynomial out;
  for (const auto& [mono, c] : poly) {
    Polynomial term{{Monomial{}, c}};
    for (const auto& v : mono) term = multiply(term, subst(v));
    out = add(std::move(out), term);
  }
  return out;
}

inline constexpr int kReferenceMaxM = 6;

/// T_m by literal polynomial expansion of
///   (x^(m)_1 + x^(m)_2) T_{m-1}(x^(1..m-1)) + (x^(m)_1 - x^(m)_2) T_{m-1}(B^s x^(1..m-1)),
/// where B^s x has coordinates x_{j+s} (zero past the end), s = 2^{m-2}, N = 2^{m-1}.
inline SparseMultilinearForm expand_Tm_reference(int m) {
  if (m < 2) throw DomainError("expand_Tm_reference needs m >= 2");
  if (m > kReferenceMaxM) throw CapExceeded("expand_Tm_reference is limited to m <= 6");
  auto sum = [](Polynomial a, const Polynomial& b) { return add(std::move(a), b); };
  auto neg = [](Polynomial a) {
    for (auto& kv : a) kv.second = -kv.second;
    return a;
  };
  // T_2 with slots numbered 1, 2
  Polynomial t = add(add(multiply(variable(1, 1), variable(2, 1)), multiply(variable(1, 1), variable(2, 2))),
                     add(multiply(variable(1, 2), variable(2, 1)), neg(multiply(variable(1, 2), variable(2, 2)))));
  for (int k = 3; k <= m; ++k) {
    const Index s = Index{1} << (k - 2);
    const Index n = 2 * s;
    const Polynomial shifted = substitute(t, [&](const Variable& v) {
      const Index j = v.second + s;
      return j <= n ? variable(v.first, j) : Polynomial{};
    });
    const Polynomial plus = sum(variable(k, 1), variable(k, 2));
    const Polynomial minus = sum(variable(k, 1), neg(variable(k, 2)));
    t = sum(multiply(plus, t), multiply(minus, shifted));
  }

  const Index n = Index{1} << (m - 1);
  SparseMultilinearForm::Builder b(std::vector<Index>(static_cast<std::size_t>(m), n));
  std::vector<Index> idx(static_cast<std::size_t>(m));
  for (const auto& [mono, c] : t) {
    if (mono.size() != static_cast<std::size_t>(m)) throw DomainError("expansion is not multilinear");
    for (std::size_t k = 0; k < mono.size(); ++k) {
      if (mono[k].first != static_cast<int>(k) + 1) throw DomainError("expansion is not multilinear");
      idx[k] = mono[k].second;
    }
    b.add(idx, c);
  }
  return std::move(b).build();
}

/// Dense evaluation by looping over every index tuple; for small forms only.
inline double evaluate_dense(const SparseMultilinearForm& form, const std::vector<std::vector<double>>& args) {
  const std::size_t a = form.arity();
  std::vector<Index> idx(a, 1);
  double sum = 0.0;
  for (;;) {
    double t = form.coefficient(idx);
    if (t != 0.0) {
      for (std::size_t k = 0; k < a; ++k) t *= args[k][idx[k] - 1];
      sum += t;
    }
    std::size_t k = 0;
    while (k < a && ++idx[k] > form.dims()[k]) idx[k++] = 1;
    if (k == a) break;
  }
  return sum;
}

}  // namespace hlb::oracle
