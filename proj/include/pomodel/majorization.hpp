#pragma once

// Vector preorders on positive parameter vectors: majorization, weak
// super/sub-majorization, p-larger and reciprocal majorization. Every
// predicate sorts its inputs internally, so callers pass vectors as given.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "pomodel/errors.hpp"

namespace pomodel {

/// Slack used for the total-sum equality and every prefix comparison.
inline constexpr double kMajorizationTol = 1e-9;

/// Ordered sequence of strictly positive proportionality constants.
class ParamVector {
 public:
  explicit ParamVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw DomainError("ParamVector: length must be >= 1");
    for (double v : values_) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError("ParamVector: entries must be finite and > 0");
      }
    }
  }
  ParamVector(std::initializer_list<double> values)
      : ParamVector(std::vector<double>(values)) {}

  /// n copies of value.
  static ParamVector homogeneous(double value, std::size_t n) {
    if (n == 0) throw DomainError("ParamVector: length must be >= 1");
    return ParamVector(std::vector<double>(n, value));
  }

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  double sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }
  double mean() const { return sum() / static_cast<double>(size()); }
  double geometric_mean() const {
    double log_sum = 0.0;
    for (double v : values_) log_sum += std::log(v);
    return std::exp(log_sum / static_cast<double>(size()));
  }

  friend bool operator==(const ParamVector&, const ParamVector&) = default;

 private:
  std::vector<double> values_;
};

/// Two-valued vector: n1 copies of lambda1 followed by n2 copies of lambda2.
struct OutlierSpec {
  double lambda1;
  double lambda2;
  int n1;
  int n2;

  void validate() const {
    if (n1 < 1 || n2 < 1) throw DomainError("OutlierSpec: n1 and n2 must be >= 1");
    if (!(lambda1 > 0.0) || !(lambda2 > 0.0)) {
      throw DomainError("OutlierSpec: parameters must be > 0");
    }
  }
};

inline ParamVector expand_outlier(const OutlierSpec& spec) {
  spec.validate();
  std::vector<double> out(static_cast<std::size_t>(spec.n1), spec.lambda1);
  out.insert(out.end(), static_cast<std::size_t>(spec.n2), spec.lambda2);
  return ParamVector(std::move(out));
}

namespace detail {

inline void require_same_length(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw DimensionError("vectors differ in length: " + std::to_string(x.size()) +
                         " vs " + std::to_string(y.size()));
  }
}

inline void require_positive(std::span<const double> x) {
  for (double v : x) {
    if (!(v > 0.0)) throw DomainError("entries must be > 0");
  }
}

inline std::vector<double> ascending(std::span<const double> x) {
  std::vector<double> s(x.begin(), x.end());
  std::stable_sort(s.begin(), s.end());
  return s;
}

// True iff Σ_{i<=j} g(x_(i)) <= Σ_{i<=j} g(y_(i)) + tol for every prefix j,
// over the increasing arrangements of x and y.
template <typename Transform>
bool prefix_dominated(std::span<const double> x, std::span<const double> y, Transform g) {
  const auto xs = ascending(x);
  const auto ys = ascending(y);
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    sx += g(xs[j]);
    sy += g(ys[j]);
    if (sx > sy + kMajorizationTol) return false;
  }
  return true;
}

}  // namespace detail

/// x majorizes y: increasing-arrangement prefix sums of x never exceed those
/// of y, and the totals agree.
inline bool majorizes(std::span<const double> x, std::span<const double> y) {
  detail::require_same_length(x, y);
  const double total_x = std::accumulate(x.begin(), x.end(), 0.0);
  const double total_y = std::accumulate(y.begin(), y.end(), 0.0);
  if (std::abs(total_x - total_y) > kMajorizationTol) return false;
  return detail::prefix_dominated(x, y, [](double v) { return v; });
}

/// x weakly supermajorizes y.
inline bool weak_supermajorizes(std::span<const double> x, std::span<const double> y) {
  detail::require_same_length(x, y);
  return detail::prefix_dominated(x, y, [](double v) { return v; });
}

/// x weakly submajorizes y: every suffix sum of x's increasing arrangement is
/// at least the matching suffix sum of y.
inline bool weak_submajorizes(std::span<const double> x, std::span<const double> y) {
  detail::require_same_length(x, y);
  const auto xs = detail::ascending(x);
  const auto ys = detail::ascending(y);
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t j = xs.size(); j-- > 0;) {
    sx += xs[j];
    sy += ys[j];
    if (sx + kMajorizationTol < sy) return false;
  }
  return true;
}

/// x is p-larger than y. Prefix products are compared as sums of logarithms.
inline bool p_larger(std::span<const double> x, std::span<const double> y) {
  detail::require_same_length(x, y);
  detail::require_positive(x);
  detail::require_positive(y);
  return detail::prefix_dominated(x, y, [](double v) { return std::log(v); });
}

/// x reciprocally majorizes y: prefix sums of reciprocals of x dominate.
inline bool reciprocally_majorizes(std::span<const double> x, std::span<const double> y) {
  detail::require_same_length(x, y);
  detail::require_positive(x);
  detail::require_positive(y);
  return detail::prefix_dominated(x, y, [](double v) { return -1.0 / v; });
}

inline bool majorizes(const ParamVector& x, const ParamVector& y) {
  return majorizes(x.values(), y.values());
}
inline bool weak_supermajorizes(const ParamVector& x, const ParamVector& y) {
  return weak_supermajorizes(x.values(), y.values());
}
inline bool weak_submajorizes(const ParamVector& x, const ParamVector& y) {
  return weak_submajorizes(x.values(), y.values());
}
inline bool p_larger(const ParamVector& x, const ParamVector& y) {
  return p_larger(x.values(), y.values());
}
inline bool reciprocally_majorizes(const ParamVector& x, const ParamVector& y) {
  return reciprocally_majorizes(x.values(), y.values());
}

/// Nondecreasing order (set E+ for positive vectors).
inline bool is_nondecreasing(std::span<const double> x) {
  return std::is_sorted(x.begin(), x.end());
}

/// Nonincreasing order (set D+ for positive vectors).
inline bool is_nonincreasing(std::span<const double> x) {
  return std::is_sorted(x.begin(), x.end(), std::greater<>{});
}

}  // namespace pomodel
