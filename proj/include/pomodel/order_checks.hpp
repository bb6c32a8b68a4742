#pragma once

// Grid-based verification of stochastic and relative-ageing orders between
// two system lifetimes. A verdict that holds is evidence on the recorded grid,
// not a proof; refine the grid to gain confidence.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pomodel/errors.hpp"
#include "pomodel/systems.hpp"

namespace pomodel {

/// Absolute slack on probabilities (st).
inline constexpr double kProbabilityTol = 1e-9;
/// Relative slack on rates (hr, rhr).
inline constexpr double kRateTol = 1e-9;
/// Relative slack between adjacent grid values in monotonicity tests.
inline constexpr double kMonotoneTol = 1e-10;
/// Fraction of skipped grid points above which a verdict is flagged degraded.
inline constexpr double kDegradedFraction = 0.05;

enum class Spacing { linear, logarithmic };

struct GridSpec {
  double t_min = 1e-3;
  double t_max = 20.0;
  std::size_t count = 2000;
  Spacing spacing = Spacing::logarithmic;

  /// Logarithmic, [1e-3, 20], 2000 points.
  static GridSpec default_grid() { return {}; }

  void validate() const {
    if (!(t_min > 0.0) || !std::isfinite(t_max) || !(t_min < t_max)) {
      throw ConfigError("grid: require 0 < t_min < t_max < inf");
    }
    if (count < 2) throw ConfigError("grid: count must be >= 2");
  }

  std::vector<double> points() const {
    validate();
    std::vector<double> t(count);
    const double last = static_cast<double>(count - 1);
    if (spacing == Spacing::linear) {
      const double step = (t_max - t_min) / last;
      for (std::size_t i = 0; i < count; ++i) t[i] = t_min + step * static_cast<double>(i);
    } else {
      const double lo = std::log(t_min);
      const double step = (std::log(t_max) - lo) / last;
      for (std::size_t i = 0; i < count; ++i) t[i] = std::exp(lo + step * static_cast<double>(i));
    }
    t.front() = t_min;
    t.back() = t_max;
    return t;
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

enum class Relation { st, hr, rhr, lr, ageing_hr, ageing_rhr };

inline std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::st: return "st";
    case Relation::hr: return "hr";
    case Relation::rhr: return "rhr";
    case Relation::lr: return "lr";
    case Relation::ageing_hr: return "ageing_hr";
    case Relation::ageing_rhr: return "ageing_rhr";
  }
  return "?";
}

/// A grid point where the defining inequality fails. For pointwise relations
/// lhs/rhs are the quantities of A and B. For ratio relations lhs is the ratio
/// at t and rhs the ratio at the preceding valid grid point.
struct Witness {
  double t;
  double lhs;
  double rhs;
};

struct OrderVerdict {
  Relation relation;
  bool holds = true;
  std::vector<Witness> witnesses;
  GridSpec grid;
  std::size_t skipped = 0;
  bool degraded = false;
};

enum class Monotonicity { monotone_up, monotone_down, nonmonotone };

inline std::string_view to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::monotone_up: return "monotone_up";
    case Monotonicity::monotone_down: return "monotone_down";
    case Monotonicity::nonmonotone: return "nonmonotone";
  }
  return "?";
}

/// Interior extremum: f(a) < f(b) > f(c), or f(a) > f(b) < f(c).
struct TurningTriple {
  std::array<double, 3> t;
  std::array<double, 3> value;
};

struct MonotonicityResult {
  Monotonicity kind = Monotonicity::monotone_up;
  std::optional<TurningTriple> witness;
};

namespace detail {

inline bool significant_rise(double prev, double cur, double tol) {
  return cur - prev > tol * std::max(std::abs(prev), std::abs(cur));
}

inline bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace detail

/// Classifies samples y(t) with relative slack tol between neighbours. A
/// sequence with no significant step is reported as monotone_up.
inline MonotonicityResult classify_monotonicity(std::span<const double> t,
                                                std::span<const double> y,
                                                double tol = kMonotoneTol) {
  if (t.size() != y.size()) throw DimensionError("classify_monotonicity: t and y differ in length");
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!std::isfinite(y[i])) throw EvaluationError("non-finite value on grid", t[i]);
  }
  std::optional<std::size_t> first_up;
  std::optional<std::size_t> first_down;
  MonotonicityResult out;
  for (std::size_t i = 0; i + 1 < y.size(); ++i) {
    const bool up = detail::significant_rise(y[i], y[i + 1], tol);
    const bool down = detail::significant_rise(y[i + 1], y[i], tol);
    if (up && !first_up) first_up = i;
    if (down && !first_down) first_down = i;
    if (first_up && first_down) break;
  }
  if (!first_up && !first_down) return out;
  if (!first_down) return out;
  if (!first_up) {
    out.kind = Monotonicity::monotone_down;
    return out;
  }
  out.kind = Monotonicity::nonmonotone;
  // The earlier significant step fixes a; the later one in the opposite
  // direction fixes c; b is the extreme value in between.
  const bool peak = *first_up < *first_down;
  const std::size_t a = peak ? *first_up : *first_down;
  const std::size_t turn = peak ? *first_down : *first_up;
  std::size_t b = a + 1;
  for (std::size_t i = a + 1; i <= turn; ++i) {
    if (peak ? y[i] > y[b] : y[i] < y[b]) b = i;
  }
  const std::size_t c = turn + 1;
  out.witness = TurningTriple{{t[a], t[b], t[c]}, {y[a], y[b], y[c]}};
  return out;
}

/// Samples f on the grid and classifies it.
inline MonotonicityResult detect_nonmonotone(const std::function<double(double)>& f,
                                             const GridSpec& g, double tol = kMonotoneTol) {
  const auto t = g.points();
  std::vector<double> y(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    y[i] = f(t[i]);
    if (!std::isfinite(y[i])) throw EvaluationError("non-finite value on grid", t[i]);
  }
  return classify_monotonicity(t, y, tol);
}

namespace detail {

struct SampledPair {
  std::vector<SystemPoint> a;
  std::vector<SystemPoint> b;
};

inline SampledPair sample(const SystemModel& a, const SystemModel& b, const GridSpec& g) {
  const auto t = g.points();
  SampledPair s;
  s.a.reserve(t.size());
  s.b.reserve(t.size());
  for (double ti : t) {
    s.a.push_back(a.evaluate(ti));
    s.b.push_back(b.evaluate(ti));
  }
  return s;
}

inline void finish(OrderVerdict& v) {
  v.holds = v.witnesses.empty();
  v.degraded = static_cast<double>(v.skipped) >
               kDegradedFraction * static_cast<double>(v.grid.count);
}

// Pointwise test: violation when lhs exceeds rhs by more than the slack.
// `sign` = +1 checks lhs <= rhs, -1 checks lhs >= rhs.
template <typename Quantity>
OrderVerdict pointwise(Relation rel, const SystemModel& a, const SystemModel& b, const GridSpec& g,
                       Quantity q, bool relative, double tol, int sign) {
  OrderVerdict v{rel, true, {}, g, 0, false};
  const auto s = sample(a, b, g);
  for (std::size_t i = 0; i < s.a.size(); ++i) {
    const double lhs = q(s.a[i]);
    const double rhs = q(s.b[i]);
    if (!std::isfinite(lhs) || !std::isfinite(rhs)) {
      ++v.skipped;
      continue;
    }
    const double slack = relative ? tol * std::max(std::abs(lhs), std::abs(rhs)) : tol;
    if (sign * (lhs - rhs) > slack) v.witnesses.push_back({s.a[i].t, lhs, rhs});
  }
  finish(v);
  return v;
}

// Ratio test: num/den must be monotone in the requested direction. Points
// where either factor is zero, subnormal or non-finite are skipped.
template <typename Numerator, typename Denominator>
OrderVerdict ratio_monotone(Relation rel, const std::vector<SystemPoint>& num_pts,
                            const std::vector<SystemPoint>& den_pts, const GridSpec& g,
                            Numerator num, Denominator den, bool nondecreasing) {
  OrderVerdict v{rel, true, {}, g, 0, false};
  std::optional<double> prev;
  for (std::size_t i = 0; i < num_pts.size(); ++i) {
    const double n = num(num_pts[i]);
    const double d = den(den_pts[i]);
    if (!finite_positive(n) || !finite_positive(d) || n < 1e-300 || d < 1e-300) {
      ++v.skipped;
      continue;
    }
    const double r = n / d;
    if (prev) {
      const bool bad = nondecreasing ? significant_rise(r, *prev, kMonotoneTol)
                                     : significant_rise(*prev, r, kMonotoneTol);
      if (bad) v.witnesses.push_back({num_pts[i].t, r, *prev});
    }
    prev = r;
  }
  finish(v);
  return v;
}

}  // namespace detail

/// A <=st B: survival of A never exceeds survival of B.
inline OrderVerdict check_st(const SystemModel& a, const SystemModel& b,
                             const GridSpec& g = GridSpec::default_grid()) {
  return detail::pointwise(Relation::st, a, b, g, [](const SystemPoint& p) { return p.survival; },
                           false, kProbabilityTol, +1);
}

/// A <=hr B: hazard of A is at least the hazard of B.
inline OrderVerdict check_hr(const SystemModel& a, const SystemModel& b,
                             const GridSpec& g = GridSpec::default_grid()) {
  return detail::pointwise(Relation::hr, a, b, g, [](const SystemPoint& p) { return p.hazard; },
                           true, kRateTol, -1);
}

/// A <=rhr B: reversed hazard of A never exceeds that of B.
inline OrderVerdict check_rhr(const SystemModel& a, const SystemModel& b,
                              const GridSpec& g = GridSpec::default_grid()) {
  return detail::pointwise(Relation::rhr, a, b, g,
                           [](const SystemPoint& p) { return p.reversed_hazard; }, true, kRateTol,
                           +1);
}

/// A <=lr B: f_A / f_B is nonincreasing.
inline OrderVerdict check_lr(const SystemModel& a, const SystemModel& b,
                             const GridSpec& g = GridSpec::default_grid()) {
  const auto s = detail::sample(a, b, g);
  auto density = [](const SystemPoint& p) { return p.density; };
  return detail::ratio_monotone(Relation::lr, s.a, s.b, g, density, density, false);
}

/// A ages faster than B in hazard rate: h_A / h_B is nondecreasing.
inline OrderVerdict check_ageing_hr(const SystemModel& a, const SystemModel& b,
                                    const GridSpec& g = GridSpec::default_grid()) {
  const auto s = detail::sample(a, b, g);
  auto hazard = [](const SystemPoint& p) { return p.hazard; };
  return detail::ratio_monotone(Relation::ageing_hr, s.a, s.b, g, hazard, hazard, true);
}

/// A ages faster than B in reversed hazard rate: r~_B / r~_A is nondecreasing.
inline OrderVerdict check_ageing_rhr(const SystemModel& a, const SystemModel& b,
                                     const GridSpec& g = GridSpec::default_grid()) {
  const auto s = detail::sample(a, b, g);
  auto rev = [](const SystemPoint& p) { return p.reversed_hazard; };
  return detail::ratio_monotone(Relation::ageing_rhr, s.b, s.a, g, rev, rev, true);
}

inline OrderVerdict check(Relation r, const SystemModel& a, const SystemModel& b,
                          const GridSpec& g = GridSpec::default_grid()) {
  switch (r) {
    case Relation::st: return check_st(a, b, g);
    case Relation::hr: return check_hr(a, b, g);
    case Relation::rhr: return check_rhr(a, b, g);
    case Relation::lr: return check_lr(a, b, g);
    case Relation::ageing_hr: return check_ageing_hr(a, b, g);
    case Relation::ageing_rhr: return check_ageing_rhr(a, b, g);
  }
  throw ConfigError("unknown relation");
}

}  // namespace pomodel
