#pragma once

// Sparse m-linear forms on products of finite-dimensional p-spaces and the
// recursive ±1 forms T_m used to bound the Hardy–Littlewood constants.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hlb/errors.hpp"
#include "hlb/extended_real.hpp"

namespace hlb {

using Index = std::uint32_t;

/// An m-linear form A(x^(1), ..., x^(m)) = Σ a_{j_1..j_m} x^(1)_{j_1} ... x^(m)_{j_m}.
///
/// Index tuples are 1-based. Entries are kept sorted lexicographically by index
/// tuple, with duplicates merged and zeros dropped, so iteration order is canonical.
/// The object is immutable once built; use SparseMultilinearForm::Builder.
class SparseMultilinearForm {
 public:
  class Builder;

  /// View of one stored entry.
  struct Entry {
    std::span<const Index> index;
    double value;
  };

  SparseMultilinearForm() = default;

  std::size_t arity() const { return dims_.size(); }
  std::span<const Index> dims() const { return dims_; }
  std::size_t nnz() const { return values_.size(); }

  Entry entry(std::size_t k) const {
    return {std::span<const Index>(indices_.data() + k * arity(), arity()), values_[k]};
  }
  std::span<const double> values() const { return values_; }
  std::span<const Index> flat_indices() const { return indices_; }

  /// Stored coefficient at a 1-based index tuple, 0 when absent.
  double coefficient(std::span<const Index> index) const {
    if (index.size() != arity()) throw DomainError("coefficient: index arity mismatch");
    std::size_t lo = 0, hi = nnz();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      const auto cur = entry(mid).index;
      if (std::lexicographical_compare(cur.begin(), cur.end(), index.begin(), index.end()))
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo < nnz() && std::ranges::equal(entry(lo).index, index)) return values_[lo];
    return 0.0;
  }
  double coefficient(std::initializer_list<Index> index) const {
    return coefficient(std::span<const Index>(index.begin(), index.size()));
  }

  friend bool operator==(const SparseMultilinearForm&, const SparseMultilinearForm&) = default;

 private:
  std::vector<Index> dims_;
  std::vector<Index> indices_;  // nnz * arity, row-major
  std::vector<double> values_;
};

class SparseMultilinearForm::Builder {
 public:
  explicit Builder(std::vector<Index> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw DomainError("form arity must be >= 1");
    for (Index d : dims_)
      if (d == 0) throw DomainError("form dimensions must be positive");
  }

  std::size_t arity() const { return dims_.size(); }

  /// Adds value at a 1-based index tuple; repeated tuples accumulate.
  Builder& add(std::span<const Index> index, double value) {
    if (index.size() != dims_.size()) throw DomainError("index arity mismatch");
    for (std::size_t k = 0; k < index.size(); ++k)
      if (index[k] < 1 || index[k] > dims_[k])
        throw DomainError("index " + std::to_string(index[k]) + " out of range in slot " +
                          std::to_string(k + 1));
    indices_.insert(indices_.end(), index.begin(), index.end());
    values_.push_back(value);
    return *this;
  }
  Builder& add(std::initializer_list<Index> index, double value) {
    return add(std::span<const Index>(index.begin(), index.size()), value);
  }

  SparseMultilinearForm build() && {
    const std::size_t a = dims_.size();
    const std::size_t n = values_.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto key = [&](std::size_t k) { return std::span<const Index>(indices_.data() + k * a, a); };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
      const auto kl = key(l), kr = key(r);
      return std::lexicographical_compare(kl.begin(), kl.end(), kr.begin(), kr.end());
    });

    SparseMultilinearForm form;
    form.dims_ = std::move(dims_);
    for (std::size_t i = 0; i < n;) {
      const auto k = key(order[i]);
      double sum = 0.0;
      std::size_t j = i;
      for (; j < n && std::ranges::equal(key(order[j]), k); ++j) sum += values_[order[j]];
      if (sum != 0.0) {
        form.indices_.insert(form.indices_.end(), k.begin(), k.end());
        form.values_.push_back(sum);
      }
      i = j;
    }
    return form;
  }

 private:
  std::vector<Index> dims_;
  std::vector<Index> indices_;
  std::vector<double> values_;
};

/// A coordinate vector tagged with the exponent of the space it lives in.
struct VectorP {
  std::vector<double> coords;
  ExtReal p = ExtReal::infinity();

  std::size_t size() const { return coords.size(); }
  double norm() const { return p_norm(coords, p); }

  static double p_norm(std::span<const double> x, ExtReal p) {
    if (p.is_infinite()) {
      double m = 0.0;
      for (double v : x) m = std::max(m, std::abs(v));
      return m;
    }
    const double pv = p.value();
    if (pv == 1.0) {
      double s = 0.0;
      for (double v : x) s += std::abs(v);
      return s;
    }
    // scale by the max entry to avoid overflow for large p
    double scale = 0.0;
    for (double v : x) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return 0.0;
    double s = 0.0;
    for (double v : x) s += std::pow(std::abs(v) / scale, pv);
    return scale * std::pow(s, 1.0 / pv);
  }
};

/// B^k: (v_{k+1}, ..., v_N, 0, ..., 0), same length and exponent.
inline VectorP backward_shift(const VectorP& v, std::size_t k) {
  VectorP out{std::vector<double>(v.size(), 0.0), v.p};
  if (k < v.size()) std::copy(v.coords.begin() + static_cast<std::ptrdiff_t>(k), v.coords.end(), out.coords.begin());
  return out;
}

/// T_2(x, y) = x1 y1 + x1 y2 + x2 y1 - x2 y2 on dims (2, 2).
inline SparseMultilinearForm make_T2() {
  SparseMultilinearForm::Builder b({2, 2});
  b.add({1, 1}, 1.0).add({1, 2}, 1.0).add({2, 1}, 1.0).add({2, 2}, -1.0);
  return std::move(b).build();
}

inline constexpr int kDefaultTmCap = 12;

/// T_m on (ℓ_p^{2^{m-1}})^m, built from T_{m-1} by
///   T_m(x^(1..m)) = (x^(m)_1 + x^(m)_2) T_{m-1}(x^(1..m-1))
///                 + (x^(m)_1 - x^(m)_2) T_{m-1}(B^s x^(1), ..., B^s x^(m-1)),   s = 2^{m-2}.
/// T_{m-1} acts on the first s coordinates of each slot, so the second copy reads
/// coordinates s+1..2s and the two copies have disjoint supports. The result has
/// exactly 4^{m-1} entries, each ±1.
inline SparseMultilinearForm make_Tm(int m, int cap = kDefaultTmCap) {
  if (m < 2) throw DomainError("make_Tm needs m >= 2");
  if (m > cap) throw CapExceeded("make_Tm: m = " + std::to_string(m) + " exceeds cap " + std::to_string(cap));
  SparseMultilinearForm form = make_T2();
  for (int k = 3; k <= m; ++k) {
    const Index shift = Index{1} << (k - 2);
    const Index dim = shift * 2;
    SparseMultilinearForm::Builder b(std::vector<Index>(static_cast<std::size_t>(k), dim));
    std::vector<Index> idx(static_cast<std::size_t>(k));
    for (std::size_t e = 0; e < form.nnz(); ++e) {
      const auto [prev, c] = form.entry(e);
      std::copy(prev.begin(), prev.end(), idx.begin());
      idx.back() = 1;
      b.add(idx, c);
      idx.back() = 2;
      b.add(idx, c);
      for (std::size_t s = 0; s + 1 < idx.size(); ++s) idx[s] = prev[s] + shift;
      idx.back() = 1;
      b.add(idx, c);
      idx.back() = 2;
      b.add(idx, -c);
    }
    form = std::move(b).build();
  }
  return form;
}

/// A(args[0], ..., args[m-1]) with args[k] of length dims[k].
inline double evaluate(const SparseMultilinearForm& form, std::span<const std::vector<double>> args) {
  if (args.size() != form.arity()) throw DomainError("evaluate: expected " + std::to_string(form.arity()) + " arguments");
  for (std::size_t k = 0; k < args.size(); ++k)
    if (args[k].size() != form.dims()[k]) throw DomainError("evaluate: dimension mismatch in slot " + std::to_string(k + 1));
  double sum = 0.0;
  const std::size_t a = form.arity();
  const auto idx = form.flat_indices();
  const auto val = form.values();
  for (std::size_t e = 0; e < val.size(); ++e) {
    double t = val[e];
    for (std::size_t k = 0; k < a; ++k) t *= args[k][idx[e * a + k] - 1];
    sum += t;
  }
  return sum;
}

inline double evaluate(const SparseMultilinearForm& form, std::span<const VectorP> args) {
  std::vector<std::vector<double>> raw;
  raw.reserve(args.size());
  for (const auto& v : args) raw.push_back(v.coords);
  return evaluate(form, std::span<const std::vector<double>>(raw));
}

/// Coefficient vector of the linear map x^(slot) ↦ A(..., x^(slot), ...) with other slots fixed.
inline std::vector<double> partial_coefficients(const SparseMultilinearForm& form,
                                                std::span<const std::vector<double>> args,
                                                std::size_t slot) {
  std::vector<double> c(form.dims()[slot], 0.0);
  const std::size_t a = form.arity();
  const auto idx = form.flat_indices();
  const auto val = form.values();
  for (std::size_t e = 0; e < val.size(); ++e) {
    double t = val[e];
    for (std::size_t k = 0; k < a; ++k)
      if (k != slot) t *= args[k][idx[e * a + k] - 1];
    c[idx[e * a + slot] - 1] += t;
  }
  return c;
}

/// (Σ |a_j|^rho)^{1/rho} over stored coefficients.
inline double hl_sum(const SparseMultilinearForm& form, double rho) {
  if (!(rho >= 1.0)) throw DomainError("hl_sum needs rho >= 1");
  double s = 0.0;
  for (double v : form.values()) s += std::pow(std::abs(v), rho);
  return std::pow(s, 1.0 / rho);
}

// Text format: one line per entry, "j_1 j_2 ... j_m coefficient", sorted.
// Coefficients use 15 significant digits. Lines starting with '#' are comments on input.

inline void write_form(std::ostream& os, const SparseMultilinearForm& form) {
  for (std::size_t e = 0; e < form.nnz(); ++e) {
    const auto [idx, v] = form.entry(e);
    for (Index j : idx) os << j << ' ';
    os << format_number(v) << '\n';
  }
}

inline std::string form_to_text(const SparseMultilinearForm& form) {
  std::ostringstream os;
  write_form(os, form);
  return os.str();
}

/// Reads the text format. Dimensions default to the largest index seen in each slot
/// unless dims is given.
inline SparseMultilinearForm read_form(std::istream& is, std::vector<Index> dims = {}) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t arity = 0;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<double> fields;
    std::string tok;
    while (ls >> tok) {
      char* end = nullptr;
      const double v = std::strtod(tok.c_str(), &end);
      if (end != tok.c_str() + tok.size()) throw DomainError("form line " + std::to_string(lineno) + ": bad token '" + tok + "'");
      fields.push_back(v);
    }
    if (fields.size() < 2) throw DomainError("form line " + std::to_string(lineno) + ": need indices and a coefficient");
    if (arity == 0) arity = fields.size() - 1;
    if (fields.size() - 1 != arity) throw DomainError("form line " + std::to_string(lineno) + ": inconsistent arity");
    for (std::size_t k = 0; k < arity; ++k)
      if (fields[k] < 1 || fields[k] != std::floor(fields[k]))
        throw DomainError("form line " + std::to_string(lineno) + ": indices must be positive integers");
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) throw DomainError("form file has no entries");
  if (dims.empty()) {
    dims.assign(arity, 1);
    for (const auto& r : rows)
      for (std::size_t k = 0; k < arity; ++k) dims[k] = std::max(dims[k], static_cast<Index>(r[k]));
  }
  SparseMultilinearForm::Builder b(dims);
  std::vector<Index> idx(arity);
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < arity; ++k) idx[k] = static_cast<Index>(r[k]);
    b.add(idx, r[arity]);
  }
  return std::move(b).build();
}

}  // namespace hlb
