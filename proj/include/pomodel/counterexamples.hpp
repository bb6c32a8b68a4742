#pragma once

// Published counterexamples: fixed parameter sets showing that a theorem's
// hypothesis cannot be weakened. Each reproduction recomputes the quoted
// values, re-derives the order verdict and, for the figure cases, the ratio
// curve with its turning point.

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pomodel/baseline.hpp"
#include "pomodel/errors.hpp"
#include "pomodel/majorization.hpp"
#include "pomodel/order_checks.hpp"
#include "pomodel/systems.hpp"

namespace pomodel {

enum class CounterexampleId { CE3_1, CE3_2, CE4_1a, CE4_1b, CE4_2, CE4_3a, CE4_3b, CE4_4 };

inline constexpr std::array<CounterexampleId, 8> kAllCounterexamples = {
    CounterexampleId::CE3_1,  CounterexampleId::CE3_2,  CounterexampleId::CE4_1a,
    CounterexampleId::CE4_1b, CounterexampleId::CE4_2,  CounterexampleId::CE4_3a,
    CounterexampleId::CE4_3b, CounterexampleId::CE4_4,
};

inline std::string_view to_string(CounterexampleId id) {
  switch (id) {
    case CounterexampleId::CE3_1: return "CE3.1";
    case CounterexampleId::CE3_2: return "CE3.2";
    case CounterexampleId::CE4_1a: return "CE4.1a";
    case CounterexampleId::CE4_1b: return "CE4.1b";
    case CounterexampleId::CE4_2: return "CE4.2";
    case CounterexampleId::CE4_3a: return "CE4.3a";
    case CounterexampleId::CE4_3b: return "CE4.3b";
    case CounterexampleId::CE4_4: return "CE4.4";
  }
  return "?";
}

inline CounterexampleId parse_counterexample_id(std::string_view s) {
  for (auto id : kAllCounterexamples) {
    if (to_string(id) == s) return id;
  }
  throw ConfigError("unknown counterexample id: " + std::string(s));
}

/// Published value next to the recomputed one.
struct QuotedValue {
  std::string label;
  double x;
  double published;
  double computed;
  double tolerance;

  double abs_error() const { return std::abs(computed - published); }
  bool matches() const { return abs_error() <= tolerance; }
};

/// A parameter relation the counterexample is built on, with the value the
/// construction requires.
struct Premise {
  std::string name;
  bool expected;
  bool observed;
};

struct RatioCurve {
  std::string name;
  std::vector<double> t;
  std::vector<double> ratio;
  MonotonicityResult shape;
};

struct CounterexampleReport {
  CounterexampleId id;
  Topology topology;
  Baseline base;
  ParamVector x;
  ParamVector y;
  GridSpec grid;
  std::vector<Premise> premises;
  std::vector<QuotedValue> values;
  /// Order check the counterexample refutes; the expected outcome is failure.
  std::string verdict_operands;
  std::optional<OrderVerdict> verdict;
  std::vector<RatioCurve> curves;

  bool values_match() const {
    for (const auto& v : values) {
      if (!v.matches()) return false;
    }
    return true;
  }
  bool premises_match() const {
    for (const auto& p : premises) {
      if (p.expected != p.observed) return false;
    }
    return true;
  }
  bool curves_nonmonotone() const {
    for (const auto& c : curves) {
      if (c.shape.kind != Monotonicity::nonmonotone) return false;
    }
    return true;
  }
  /// Everything the counterexample claims was observed.
  bool reproduced() const {
    return values_match() && premises_match() && curves_nonmonotone() &&
           (!verdict || !verdict->holds);
  }
};

/// Tolerance on published survival probabilities (5-6 significant figures).
inline constexpr double kQuotedSurvivalTol = 1e-4;
/// Tolerance on published hazard values (5 significant figures).
inline constexpr double kQuotedHazardTol = 1e-3;

namespace detail {

inline GridSpec value_case_grid() { return {0.01, 5.0, 1000, Spacing::linear}; }
inline GridSpec figure_case_grid() { return {0.01, 3.0, 1000, Spacing::linear}; }
// The turning point of the wide-scale Weibull case lies just past t = 3.
inline GridSpec wide_figure_case_grid() { return {0.01, 12.0, 1000, Spacing::linear}; }

enum class RatioKind { reversed_hazard, density };

inline RatioCurve ratio_curve(std::string name, const SystemModel& num, const SystemModel& den,
                              const GridSpec& g, RatioKind kind) {
  RatioCurve c{std::move(name), g.points(), {}, {}};
  c.ratio.reserve(c.t.size());
  for (double t : c.t) {
    const SystemPoint a = num.evaluate(t);
    const SystemPoint b = den.evaluate(t);
    c.ratio.push_back(kind == RatioKind::reversed_hazard ? a.reversed_hazard / b.reversed_hazard
                                                         : a.density / b.density);
  }
  c.shape = classify_monotonicity(c.t, c.ratio);
  return c;
}

inline CounterexampleReport make_report(CounterexampleId id, Topology topo, Baseline base,
                                        ParamVector x, ParamVector y, GridSpec g) {
  return {id, topo, std::move(base), std::move(x), std::move(y), g, {}, {}, {}, std::nullopt, {}};
}

}  // namespace detail

inline CounterexampleReport reproduce_counterexample(CounterexampleId id) {
  using detail::RatioKind;
  switch (id) {
    case CounterexampleId::CE3_1: {
      auto r = detail::make_report(id, Topology::series, Baseline::exponential(2.0),
                                   {2.2, 3.0, 5.0}, {2.8, 3.2, 3.3}, detail::value_case_grid());
      const SystemModel X = SystemModel::series(r.base, r.x);
      const SystemModel Y = SystemModel::series(r.base, r.y);
      r.premises = {{"lambda_reciprocally_majorizes_mu", true, reciprocally_majorizes(r.x, r.y)},
                    {"lambda_p_larger_mu", false, p_larger(r.x, r.y)}};
      r.values = {{"survival_X", 0.2, 0.63929, X.survival(0.2), kQuotedSurvivalTol},
                  {"survival_Y", 0.2, 0.641646, Y.survival(0.2), kQuotedSurvivalTol},
                  {"survival_X", 0.8, 0.0861549, X.survival(0.8), kQuotedSurvivalTol},
                  {"survival_Y", 0.8, 0.084394, Y.survival(0.8), kQuotedSurvivalTol}};
      r.verdict_operands = "st(X,Y)";
      r.verdict = check_st(X, Y, r.grid);
      return r;
    }
    case CounterexampleId::CE3_2: {
      auto r = detail::make_report(id, Topology::series, Baseline::exponential(1.2),
                                   {2.0, 3.0, 5.0}, {2.8, 3.2, 3.4}, detail::value_case_grid());
      const SystemModel X = SystemModel::series(r.base, r.x);
      const SystemModel Y = SystemModel::series(r.base, r.y);
      r.premises = {{"lambda_p_larger_mu", true, p_larger(r.x, r.y)},
                    {"lambda_weakly_supermajorizes_mu", false, weak_supermajorizes(r.x, r.y)}};
      r.values = {{"hazard_X", 0.2, 1.2297, X.hazard(0.2), kQuotedHazardTol},
                  {"hazard_Y", 0.2, 1.1687, Y.hazard(0.2), kQuotedHazardTol},
                  {"hazard_X", 1.8, 2.3935, X.hazard(1.8), kQuotedHazardTol},
                  {"hazard_Y", 1.8, 2.4089, Y.hazard(1.8), kQuotedHazardTol}};
      r.verdict_operands = "hr(X,Y)";
      r.verdict = check_hr(X, Y, r.grid);
      return r;
    }
    case CounterexampleId::CE4_1a: {
      auto r = detail::make_report(id, Topology::parallel, Baseline::exponential(1.8),
                                   {2.0, 3.0, 5.0}, {2.6, 3.2, 3.7}, detail::value_case_grid());
      const SystemModel X = SystemModel::parallel(r.base, r.x);
      const SystemModel Y = SystemModel::parallel(r.base, r.y);
      r.premises = {{"lambda_p_larger_mu", true, p_larger(r.x, r.y)},
                    {"lambda_weakly_supermajorizes_mu", false, weak_supermajorizes(r.x, r.y)}};
      r.values = {{"survival_X", 1.5, 0.471629, X.survival(1.5), kQuotedSurvivalTol},
                  {"survival_Y", 1.5, 0.459619, Y.survival(1.5), kQuotedSurvivalTol}};
      r.verdict_operands = "st(X,Y)";
      r.verdict = check_st(X, Y, r.grid);
      return r;
    }
    case CounterexampleId::CE4_1b: {
      auto r = detail::make_report(id, Topology::parallel, Baseline::exponential(1.8),
                                   {2.5, 3.0, 5.0}, {3.0, 3.8, 4.4}, detail::value_case_grid());
      const SystemModel X = SystemModel::parallel(r.base, r.x);
      const SystemModel Y = SystemModel::parallel(r.base, r.y);
      r.premises = {{"lambda_p_larger_mu", true, p_larger(r.x, r.y)}};
      r.values = {{"survival_X", 1.2, 0.67176, X.survival(1.2), kQuotedSurvivalTol},
                  {"survival_Y", 1.2, 0.69449, Y.survival(1.2), kQuotedSurvivalTol}};
      r.verdict_operands = "st(Y,X)";
      r.verdict = check_st(Y, X, r.grid);
      return r;
    }
    case CounterexampleId::CE4_2: {
      auto r = detail::make_report(id, Topology::parallel, Baseline::exponential(2.0),
                                   expand_outlier({2.0, 6.0, 2, 4}),
                                   expand_outlier({3.0, 5.5, 2, 4}), detail::figure_case_grid());
      const SystemModel X = SystemModel::parallel(r.base, r.x);
      const SystemModel Y = SystemModel::parallel(r.base, r.y);
      r.premises = {{"lambda_majorizes_mu", true, majorizes(r.x, r.y)}};
      r.verdict_operands = "ageing_rhr(X,Y)";
      r.verdict = check_ageing_rhr(X, Y, r.grid);
      r.curves.push_back(detail::ratio_curve("reversed_hazard_Y_over_X", Y, X, r.grid,
                                             RatioKind::reversed_hazard));
      r.curves.push_back(
          detail::ratio_curve("density_Y_over_X", Y, X, r.grid, RatioKind::density));
      return r;
    }
    case CounterexampleId::CE4_3a:
    case CounterexampleId::CE4_3b: {
      const bool first = id == CounterexampleId::CE4_3a;
      const double scale = first ? 0.8 : 3.0;
      const double common = first ? 3.6 : 3.4;
      auto r = detail::make_report(
          id, Topology::parallel, Baseline::weibull(2.0, scale), {2.0, 3.0, 4.0, 5.0},
          ParamVector::homogeneous(common, 4),
          first ? detail::figure_case_grid() : detail::wide_figure_case_grid());
      const SystemModel X = SystemModel::parallel(r.base, r.x);
      const SystemModel Y = SystemModel::parallel(r.base, r.y);
      r.premises = {{"common_ge_mean", first, common >= r.x.mean()}};
      r.verdict_operands = "ageing_rhr(X,Y)";
      r.verdict = check_ageing_rhr(X, Y, r.grid);
      r.curves.push_back(detail::ratio_curve("reversed_hazard_Y_over_X", Y, X, r.grid,
                                             RatioKind::reversed_hazard));
      return r;
    }
    case CounterexampleId::CE4_4: {
      auto r = detail::make_report(id, Topology::parallel, Baseline::exponential(2.0), {0.2, 0.9},
                                   {0.4, 0.9}, detail::figure_case_grid());
      const SystemModel X = SystemModel::parallel(r.base, r.x);
      const SystemModel Y = SystemModel::parallel(r.base, r.y);
      r.premises = {{"lambda1_le_mu1_le_eta", true, 0.2 <= 0.4 && 0.4 <= 0.9},
                    {"lambda1_le_eta_le_mu1", false, 0.2 <= 0.9 && 0.9 <= 0.4}};
      r.verdict_operands = "ageing_rhr(X,Y)";
      r.verdict = check_ageing_rhr(X, Y, r.grid);
      r.curves.push_back(detail::ratio_curve("reversed_hazard_Y_over_X", Y, X, r.grid,
                                             RatioKind::reversed_hazard));
      return r;
    }
  }
  throw ConfigError("unknown counterexample id");
}

}  // namespace pomodel
