#pragma once

// Comparison theorems for series and parallel PO systems. Each theorem is a
// decidable hypothesis on the parameters plus the order relation it implies;
// verify() evaluates both and reports whether the pair is consistent.

#include <algorithm>
#include <array>
#include <initializer_list>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "pomodel/baseline.hpp"
#include "pomodel/errors.hpp"
#include "pomodel/majorization.hpp"
#include "pomodel/order_checks.hpp"
#include "pomodel/systems.hpp"

namespace pomodel {

enum class TheoremId {
  T3_1, C3_1, T3_2, C3_2, T3_3, T3_4, T3_5, T3_6, T3_7, T3_8, T3_9,
  T4_1, C4_1, T4_2, T4_3, T4_4,
};

inline constexpr std::array<TheoremId, 16> kAllTheorems = {
    TheoremId::T3_1, TheoremId::C3_1, TheoremId::T3_2, TheoremId::C3_2,
    TheoremId::T3_3, TheoremId::T3_4, TheoremId::T3_5, TheoremId::T3_6,
    TheoremId::T3_7, TheoremId::T3_8, TheoremId::T3_9, TheoremId::T4_1,
    TheoremId::C4_1, TheoremId::T4_2, TheoremId::T4_3, TheoremId::T4_4,
};

inline std::string_view to_string(TheoremId id) {
  switch (id) {
    case TheoremId::T3_1: return "T3.1";
    case TheoremId::C3_1: return "C3.1";
    case TheoremId::T3_2: return "T3.2";
    case TheoremId::C3_2: return "C3.2";
    case TheoremId::T3_3: return "T3.3";
    case TheoremId::T3_4: return "T3.4";
    case TheoremId::T3_5: return "T3.5";
    case TheoremId::T3_6: return "T3.6";
    case TheoremId::T3_7: return "T3.7";
    case TheoremId::T3_8: return "T3.8";
    case TheoremId::T3_9: return "T3.9";
    case TheoremId::T4_1: return "T4.1";
    case TheoremId::C4_1: return "C4.1";
    case TheoremId::T4_2: return "T4.2";
    case TheoremId::T4_3: return "T4.3";
    case TheoremId::T4_4: return "T4.4";
  }
  return "?";
}

inline TheoremId parse_theorem_id(std::string_view s) {
  for (TheoremId id : kAllTheorems) {
    if (to_string(id) == s) return id;
  }
  throw ConfigError("unknown theorem id: " + std::string(s));
}

/// X ~ lambda, Y ~ mu, same length.
struct HeterogeneousPair {
  ParamVector lambda;
  ParamVector mu;
  friend bool operator==(const HeterogeneousPair&, const HeterogeneousPair&) = default;
};

/// X ~ (lambda1 x n1, lambda2 x n2), Y ~ (mu1 x n1, mu2 x n2).
struct OutlierPair {
  double lambda1;
  double lambda2;
  double mu1;
  double mu2;
  int n1;
  int n2;
  friend bool operator==(const OutlierPair&, const OutlierPair&) = default;
};

/// X ~ (lambda1 x n1, eta x n2), Y ~ (mu1 x n1, eta x n2).
struct SharedOutlierPair {
  double lambda1;
  double mu1;
  double eta;
  int n1;
  int n2;
  friend bool operator==(const SharedOutlierPair&, const SharedOutlierPair&) = default;
};

/// X ~ lambda (heterogeneous), Y ~ common x n (homogeneous).
struct HomogeneousComparison {
  ParamVector lambda;
  double common;
  friend bool operator==(const HomogeneousComparison&, const HomogeneousComparison&) = default;
};

using CaseInputs =
    std::variant<HeterogeneousPair, OutlierPair, SharedOutlierPair, HomogeneousComparison>;

enum class CaseShape { heterogeneous_pair, outlier_pair, shared_outlier_pair, homogeneous_comparison };

inline CaseShape shape_of(TheoremId id) {
  switch (id) {
    case TheoremId::T3_1:
    case TheoremId::T3_2:
    case TheoremId::T4_1: return CaseShape::heterogeneous_pair;
    case TheoremId::T3_3:
    case TheoremId::T3_4:
    case TheoremId::T3_6:
    case TheoremId::T3_8: return CaseShape::outlier_pair;
    case TheoremId::T3_5:
    case TheoremId::T4_3:
    case TheoremId::T4_4: return CaseShape::shared_outlier_pair;
    default: return CaseShape::homogeneous_comparison;
  }
}

inline Topology topology_of(TheoremId id) {
  switch (id) {
    case TheoremId::T4_1:
    case TheoremId::C4_1:
    case TheoremId::T4_2:
    case TheoremId::T4_3:
    case TheoremId::T4_4: return Topology::parallel;
    default: return Topology::series;
  }
}

/// Which order check a theorem's conclusion maps to, and whether the check
/// runs as (Y, X) instead of (X, Y).
struct Conclusion {
  Relation relation;
  bool swapped;
};

inline Conclusion conclusion_of(TheoremId id) {
  switch (id) {
    case TheoremId::T3_1:
    case TheoremId::C3_1: return {Relation::st, false};
    case TheoremId::T3_2:
    case TheoremId::C3_2: return {Relation::hr, false};
    // X ages slower than Y: r_X / r_Y is nonincreasing, i.e. Y ages faster.
    case TheoremId::T3_3:
    case TheoremId::T3_4:
    case TheoremId::T3_5:
    case TheoremId::T3_6:
    case TheoremId::T3_7: return {Relation::ageing_hr, true};
    case TheoremId::T3_8:
    case TheoremId::T3_9: return {Relation::lr, false};
    case TheoremId::T4_1:
    case TheoremId::C4_1: return {Relation::rhr, false};
    // X_{n:n} >=st Y_{n:n}
    case TheoremId::T4_2: return {Relation::st, true};
    case TheoremId::T4_3: return {Relation::ageing_rhr, false};
    case TheoremId::T4_4: return {Relation::lr, false};
  }
  throw ConfigError("unknown theorem id");
}

struct TheoremCase {
  TheoremId id;
  Baseline base;
  CaseInputs inputs;
  GridSpec grid = GridSpec::default_grid();

  void validate() const {
    const CaseShape want = shape_of(id);
    const bool ok = std::visit(
        [&](const auto& in) {
          using T = std::decay_t<decltype(in)>;
          if constexpr (std::is_same_v<T, HeterogeneousPair>) {
            if (in.lambda.size() != in.mu.size()) {
              throw DimensionError("theorem case: lambda and mu differ in length");
            }
            return want == CaseShape::heterogeneous_pair;
          } else if constexpr (std::is_same_v<T, OutlierPair>) {
            expand_outlier({in.lambda1, in.lambda2, in.n1, in.n2});
            expand_outlier({in.mu1, in.mu2, in.n1, in.n2});
            return want == CaseShape::outlier_pair;
          } else if constexpr (std::is_same_v<T, SharedOutlierPair>) {
            expand_outlier({in.lambda1, in.eta, in.n1, in.n2});
            expand_outlier({in.mu1, in.eta, in.n1, in.n2});
            return want == CaseShape::shared_outlier_pair;
          } else {
            if (!(in.common > 0.0)) throw DomainError("theorem case: common parameter must be > 0");
            return want == CaseShape::homogeneous_comparison;
          }
        },
        inputs);
    if (!ok) {
      throw ConfigError("theorem case: inputs do not match the shape of " +
                        std::string(to_string(id)));
    }
    grid.validate();
  }

  ParamVector x_params() const {
    return std::visit(
        [](const auto& in) -> ParamVector {
          using T = std::decay_t<decltype(in)>;
          if constexpr (std::is_same_v<T, HeterogeneousPair>) {
            return in.lambda;
          } else if constexpr (std::is_same_v<T, OutlierPair>) {
            return expand_outlier({in.lambda1, in.lambda2, in.n1, in.n2});
          } else if constexpr (std::is_same_v<T, SharedOutlierPair>) {
            return expand_outlier({in.lambda1, in.eta, in.n1, in.n2});
          } else {
            return in.lambda;
          }
        },
        inputs);
  }

  ParamVector y_params() const {
    return std::visit(
        [](const auto& in) -> ParamVector {
          using T = std::decay_t<decltype(in)>;
          if constexpr (std::is_same_v<T, HeterogeneousPair>) {
            return in.mu;
          } else if constexpr (std::is_same_v<T, OutlierPair>) {
            return expand_outlier({in.mu1, in.mu2, in.n1, in.n2});
          } else if constexpr (std::is_same_v<T, SharedOutlierPair>) {
            return expand_outlier({in.mu1, in.eta, in.n1, in.n2});
          } else {
            return ParamVector::homogeneous(in.common, in.lambda.size());
          }
        },
        inputs);
  }

  SystemModel x_system() const { return {topology_of(id), base, x_params()}; }
  SystemModel y_system() const { return {topology_of(id), base, y_params()}; }

  friend bool operator==(const TheoremCase&, const TheoremCase&) = default;
};

enum class ConditionRole { required, alternative };

struct Condition {
  std::string name;
  bool holds;
  ConditionRole role = ConditionRole::required;
};

/// Every required condition must hold, and at least one alternative when any
/// are listed.
struct Hypothesis {
  bool holds = false;
  std::vector<Condition> conditions;
};

struct TheoremReport {
  TheoremId id;
  Hypothesis hypothesis;
  Conclusion conclusion;
  std::optional<OrderVerdict> verdict;
  bool consistent = true;
};

namespace detail {

inline bool n1_ge_n2(int n1, int n2) { return n1 >= n2; }

inline bool chain(std::initializer_list<double> v) {
  return std::is_sorted(v.begin(), v.end());
}

inline Hypothesis combine(std::vector<Condition> conditions) {
  bool required = true;
  bool any_alternative = false;
  bool has_alternative = false;
  for (const auto& c : conditions) {
    if (c.role == ConditionRole::required) {
      required = required && c.holds;
    } else {
      has_alternative = true;
      any_alternative = any_alternative || c.holds;
    }
  }
  return {required && (!has_alternative || any_alternative), std::move(conditions)};
}

inline Condition alt(std::string name, bool holds) {
  return {std::move(name), holds, ConditionRole::alternative};
}

// Both pairs in E+ (nondecreasing) with n1 >= n2, or both in D+ with n1 <= n2.
inline bool e_plus_branch(const OutlierPair& in) {
  return in.lambda1 <= in.lambda2 && in.mu1 <= in.mu2 && in.n1 >= in.n2;
}
inline bool d_plus_branch(const OutlierPair& in) {
  return in.lambda1 >= in.lambda2 && in.mu1 >= in.mu2 && in.n1 <= in.n2;
}
// lambda1 <= mu1 <= mu2 <= lambda2 with n1 >= n2, or the reverse chain with n1 <= n2.
inline bool chain_up_branch(const OutlierPair& in) {
  return chain({in.lambda1, in.mu1, in.mu2, in.lambda2}) && in.n1 >= in.n2;
}
inline bool chain_down_branch(const OutlierPair& in) {
  return chain({in.lambda2, in.mu2, in.mu1, in.lambda1}) && in.n1 <= in.n2;
}

inline constexpr double kMeanRelTol = 1e-12;

}  // namespace detail

/// Evaluates the theorem's hypothesis with each condition reported on its own.
inline Hypothesis hypothesis(const TheoremCase& c) {
  c.validate();
  const ParamVector x = c.x_params();
  const ParamVector y = c.y_params();
  using detail::alt;
  switch (c.id) {
    case TheoremId::T3_1:
      return detail::combine({{"lambda_p_larger_mu", p_larger(x, y)}});
    case TheoremId::T3_2:
    case TheoremId::T4_1:
      return detail::combine({{"lambda_weakly_supermajorizes_mu", weak_supermajorizes(x, y)}});
    case TheoremId::T3_5: {
      // With a shared eta block, weak supermajorization reduces to
      // lambda1 <= mu1; the alternatives place eta relative to that pair.
      const auto& in = std::get<SharedOutlierPair>(c.inputs);
      const double l = in.lambda1, m = in.mu1, e = in.eta;
      return detail::combine({{"lambda_weakly_supermajorizes_mu", weak_supermajorizes(x, y)},
                              alt("eta_between", detail::chain({l, e, m})),
                              alt("eta_above", detail::chain({l, m, e})),
                              alt("eta_below", detail::chain({e, l, m}))});
    }
    case TheoremId::C3_1: {
      const auto& in = std::get<HomogeneousComparison>(c.inputs);
      const double gm = in.lambda.geometric_mean();
      return detail::combine(
          {{"common_ge_geometric_mean", in.common >= gm * (1.0 - detail::kMeanRelTol)}});
    }
    case TheoremId::C3_2:
    case TheoremId::T3_7:
    case TheoremId::T3_9:
    case TheoremId::C4_1: {
      const auto& in = std::get<HomogeneousComparison>(c.inputs);
      return detail::combine(
          {{"common_ge_mean", in.common >= in.lambda.mean() * (1.0 - detail::kMeanRelTol)}});
    }
    case TheoremId::T4_2: {
      const auto& in = std::get<HomogeneousComparison>(c.inputs);
      const double gm = in.lambda.geometric_mean();
      return detail::combine(
          {{"common_eq_geometric_mean", std::abs(in.common - gm) <= detail::kMeanRelTol * gm}});
    }
    case TheoremId::T3_3: {
      const auto& in = std::get<OutlierPair>(c.inputs);
      return detail::combine({{"lambda_majorizes_mu", majorizes(x, y)},
                              alt("e_plus_and_n1_ge_n2", detail::e_plus_branch(in)),
                              alt("d_plus_and_n1_le_n2", detail::d_plus_branch(in))});
    }
    case TheoremId::T3_4: {
      const auto& in = std::get<OutlierPair>(c.inputs);
      return detail::combine({{"max_lambda_le_min_mu", std::max(in.lambda1, in.lambda2) <=
                                                           std::min(in.mu1, in.mu2)}});
    }
    case TheoremId::T3_6: {
      const auto& in = std::get<OutlierPair>(c.inputs);
      return detail::combine({{"lambda_weakly_supermajorizes_mu", weak_supermajorizes(x, y)},
                              alt("chain_up_and_n1_ge_n2", detail::chain_up_branch(in)),
                              alt("chain_down_and_n1_le_n2", detail::chain_down_branch(in))});
    }
    case TheoremId::T3_8: {
      const auto& in = std::get<OutlierPair>(c.inputs);
      const bool maj = majorizes(x, y);
      const bool wsup = weak_supermajorizes(x, y);
      return detail::combine(
          {alt("majorization_e_plus", maj && detail::e_plus_branch(in)),
           alt("majorization_d_plus", maj && detail::d_plus_branch(in)),
           alt("weak_supermajorization_chain_up", wsup && detail::chain_up_branch(in)),
           alt("weak_supermajorization_chain_down", wsup && detail::chain_down_branch(in))});
    }
    case TheoremId::T4_3:
    case TheoremId::T4_4: {
      const auto& in = std::get<SharedOutlierPair>(c.inputs);
      return detail::combine(
          {{"lambda1_le_eta_le_mu1", in.lambda1 <= in.eta && in.eta <= in.mu1}});
    }
  }
  throw ConfigError("unknown theorem id");
}

/// Names of the hypothesis branches a sweep can target: the alternatives when
/// a theorem has them, otherwise its single required condition.
inline std::vector<std::string> hypothesis_branches(TheoremId id) {
  switch (id) {
    case TheoremId::T3_1: return {"lambda_p_larger_mu"};
    case TheoremId::C3_1: return {"common_ge_geometric_mean"};
    case TheoremId::T3_2:
    case TheoremId::T4_1: return {"lambda_weakly_supermajorizes_mu"};
    case TheoremId::T3_5: return {"eta_between", "eta_above", "eta_below"};
    case TheoremId::C3_2:
    case TheoremId::T3_7:
    case TheoremId::T3_9:
    case TheoremId::C4_1: return {"common_ge_mean"};
    case TheoremId::T4_2: return {"common_eq_geometric_mean"};
    case TheoremId::T3_3: return {"e_plus_and_n1_ge_n2", "d_plus_and_n1_le_n2"};
    case TheoremId::T3_4: return {"max_lambda_le_min_mu"};
    case TheoremId::T3_6: return {"chain_up_and_n1_ge_n2", "chain_down_and_n1_le_n2"};
    case TheoremId::T3_8:
      return {"majorization_e_plus", "majorization_d_plus", "weak_supermajorization_chain_up",
              "weak_supermajorization_chain_down"};
    case TheoremId::T4_3:
    case TheoremId::T4_4: return {"lambda1_le_eta_le_mu1"};
  }
  throw ConfigError("unknown theorem id");
}

/// Checks the hypothesis and, when it holds, the implied order on the case's
/// grid. A false hypothesis is vacuously consistent.
inline TheoremReport verify(const TheoremCase& c) {
  TheoremReport report{c.id, hypothesis(c), conclusion_of(c.id), std::nullopt, true};
  if (!report.hypothesis.holds) return report;
  const SystemModel x = c.x_system();
  const SystemModel y = c.y_system();
  const Conclusion& k = report.conclusion;
  report.verdict = k.swapped ? check(k.relation, y, x, c.grid) : check(k.relation, x, y, c.grid);
  report.consistent = report.verdict->holds;
  return report;
}

}  // namespace pomodel
