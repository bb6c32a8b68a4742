#pragma once

// Randomized validation of the comparison theorems. Generators build
// parameter sets that satisfy a chosen hypothesis branch by construction
// (rejection sampling for these preorders almost never hits in n > 3), then
// each instance goes through verify().

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pomodel/baseline.hpp"
#include "pomodel/errors.hpp"
#include "pomodel/majorization.hpp"
#include "pomodel/order_checks.hpp"
#include "pomodel/theorems.hpp"

namespace pomodel {

struct TrialRecord {
  std::size_t trial;
  std::string branch;
  TheoremCase instance;
  TheoremReport report;
};

struct BranchTally {
  std::string branch;
  std::size_t trials = 0;
  std::size_t consistent = 0;
};

struct SweepReport {
  TheoremId id;
  std::uint64_t seed;
  std::size_t n_trials;
  std::size_t consistent = 0;
  std::vector<BranchTally> branches;
  /// Every trial whose verdict contradicted the hypothesis, in trial order.
  std::vector<TrialRecord> inconsistencies;

  bool all_consistent() const { return consistent == n_trials; }
};

namespace detail {

inline constexpr double kSweepMin = 0.2;
inline constexpr double kSweepMax = 6.0;
// Floor for entries reduced by transfers and decrements.
inline constexpr double kSweepFloor = 0.1;
inline constexpr int kGenerationRetries = 100;

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}
inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}
inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline Baseline random_baseline(Rng& rng) {
  if (coin(rng, 0.5)) return Baseline::exponential(uniform(rng, 0.5, 2.0));
  return Baseline::weibull(uniform(rng, 0.5, 1.5), uniform(rng, 1.0, 3.0));
}

inline std::vector<double> random_values(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& e : v) e = uniform(rng, kSweepMin, kSweepMax);
  return v;
}

// Moves mass from a smaller entry to a larger one, which spreads the vector
// out: the result majorizes the input. Values stay above floor.
inline void spread(Rng& rng, std::vector<double>& v, double floor, double max_step) {
  const int moves = uniform_int(rng, 1, 3);
  for (int m = 0; m < moves; ++m) {
    std::vector<std::size_t> idx(v.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    const auto i = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(v.size()) - 2));
    const auto j = static_cast<std::size_t>(
        uniform_int(rng, static_cast<int>(i) + 1, static_cast<int>(v.size()) - 1));
    const double room = v[idx[i]] - floor;
    if (room <= 0.0) continue;
    const double d = uniform(rng, 0.0, std::min(room, max_step));
    v[idx[i]] -= d;
    v[idx[j]] += d;
  }
}

// Lowers entries, which lowers every order statistic.
inline void shrink(Rng& rng, std::vector<double>& v, double floor, double max_step) {
  for (auto& e : v) {
    if (coin(rng, 0.5) && e > floor) e -= uniform(rng, 0.0, std::min(e - floor, max_step));
  }
}

inline void shuffle(Rng& rng, std::vector<double>& v) { std::shuffle(v.begin(), v.end(), rng); }

// lambda p-larger than mu: spread and shrink in log space.
inline HeterogeneousPair gen_p_larger(Rng& rng) {
  const auto n = static_cast<std::size_t>(uniform_int(rng, 2, 6));
  auto mu = random_values(rng, n);
  std::vector<double> logs(n);
  for (std::size_t i = 0; i < n; ++i) logs[i] = std::log(mu[i]);
  if (!coin(rng, 0.1)) {
    spread(rng, logs, -1e300, 0.7);
    shrink(rng, logs, -1e300, 0.3);
  }
  std::vector<double> lambda(n);
  for (std::size_t i = 0; i < n; ++i) lambda[i] = std::exp(logs[i]);
  shuffle(rng, lambda);
  shuffle(rng, mu);
  return {ParamVector(lambda), ParamVector(mu)};
}

// lambda weakly supermajorizes mu: spread and shrink on the raw values.
inline HeterogeneousPair gen_weak_super(Rng& rng) {
  const auto n = static_cast<std::size_t>(uniform_int(rng, 2, 6));
  auto mu = random_values(rng, n);
  auto lambda = mu;
  if (!coin(rng, 0.1)) {
    spread(rng, lambda, kSweepFloor, 2.0);
    shrink(rng, lambda, kSweepFloor, 1.0);
  }
  shuffle(rng, lambda);
  shuffle(rng, mu);
  return {ParamVector(lambda), ParamVector(mu)};
}

enum class MeanKind { geometric_ge, arithmetic_ge, geometric_eq };

inline HomogeneousComparison gen_homogeneous(Rng& rng, MeanKind kind) {
  const auto n = static_cast<std::size_t>(uniform_int(rng, 2, 6));
  ParamVector lambda(random_values(rng, n));
  const double m = kind == MeanKind::arithmetic_ge ? lambda.mean() : lambda.geometric_mean();
  if (kind == MeanKind::geometric_eq || coin(rng, 0.25)) return {lambda, m};
  return {lambda, m * (1.0 + uniform(rng, 0.0, 0.5))};
}

inline std::pair<int, int> block_sizes(Rng& rng, bool n1_ge_n2) {
  int a = uniform_int(rng, 1, 4);
  int b = uniform_int(rng, 1, 4);
  if ((a < b) == n1_ge_n2) std::swap(a, b);
  return {a, b};
}

inline std::pair<double, double> ordered_pair(Rng& rng) {
  double a = uniform(rng, kSweepMin, kSweepMax);
  double b = uniform(rng, kSweepMin, kSweepMax);
  if (a > b) std::swap(a, b);
  return {a, b};
}

// Equal totals: lower the small block of mu and raise the large block so the
// sum is unchanged. lambda then majorizes mu with both pairs in E+ (or D+).
inline OutlierPair gen_majorized_outlier(Rng& rng, bool e_plus) {
  auto [small, large] = ordered_pair(rng);
  auto [n1, n2] = block_sizes(rng, e_plus);
  if (e_plus) {
    const double d1 = uniform(rng, 0.0, 1.0) * (small - kSweepFloor);
    return {small - d1, large + n1 * d1 / n2, small, large, n1, n2};
  }
  const double d2 = uniform(rng, 0.0, 1.0) * (small - kSweepFloor);
  return {large + n2 * d2 / n1, small - d2, large, small, n1, n2};
}

// lambda1 <= mu1 <= mu2 <= lambda2 (or the mirror); the outer block grows by
// at most what the inner block lost, which keeps weak supermajorization.
inline OutlierPair gen_chain_outlier(Rng& rng, bool up) {
  auto [small, large] = ordered_pair(rng);
  auto [n1, n2] = block_sizes(rng, up);
  const double d = uniform(rng, 0.0, 1.0) * (small - kSweepFloor);
  const double grow = uniform(rng, 0.0, 1.0);
  if (up) return {small - d, large + grow * n1 * d / n2, small, large, n1, n2};
  return {large + grow * n2 * d / n1, small - d, large, small, n1, n2};
}

inline OutlierPair gen_separated_outlier(Rng& rng) {
  const double c = uniform(rng, 0.5, 4.0);
  auto [n1, n2] = block_sizes(rng, coin(rng, 0.5));
  if (coin(rng, 0.05)) return {c, c, c, c, n1, n2};
  return {uniform(rng, kSweepMin, c), uniform(rng, kSweepMin, c), uniform(rng, c, kSweepMax),
          uniform(rng, c, kSweepMax), n1, n2};
}

inline std::vector<double> sorted_triple(Rng& rng) {
  std::vector<double> v = random_values(rng, 3);
  std::sort(v.begin(), v.end());
  return v;
}

// lambda1 <= mu1 with the shared eta between, above or below them.
inline SharedOutlierPair gen_shared_outlier(Rng& rng, const std::string& branch) {
  const auto v = sorted_triple(rng);
  auto [n1, n2] = block_sizes(rng, coin(rng, 0.5));
  if (branch == "eta_above") return {v[0], v[1], v[2], n1, n2};
  if (branch == "eta_below") return {v[1], v[2], v[0], n1, n2};
  return {v[0], v[2], v[1], n1, n2};
}

inline CaseInputs generate_inputs(Rng& rng, TheoremId id, const std::string& branch) {
  switch (id) {
    case TheoremId::T3_1: return gen_p_larger(rng);
    case TheoremId::T3_2:
    case TheoremId::T4_1: return gen_weak_super(rng);
    case TheoremId::T3_5: return gen_shared_outlier(rng, branch);
    case TheoremId::C3_1: return gen_homogeneous(rng, MeanKind::geometric_ge);
    case TheoremId::C3_2:
    case TheoremId::T3_7:
    case TheoremId::T3_9:
    case TheoremId::C4_1: return gen_homogeneous(rng, MeanKind::arithmetic_ge);
    case TheoremId::T4_2: return gen_homogeneous(rng, MeanKind::geometric_eq);
    case TheoremId::T3_3: return gen_majorized_outlier(rng, branch == "e_plus_and_n1_ge_n2");
    case TheoremId::T3_4: return gen_separated_outlier(rng);
    case TheoremId::T3_6: return gen_chain_outlier(rng, branch == "chain_up_and_n1_ge_n2");
    case TheoremId::T3_8:
      if (branch == "majorization_e_plus") return gen_majorized_outlier(rng, true);
      if (branch == "majorization_d_plus") return gen_majorized_outlier(rng, false);
      return gen_chain_outlier(rng, branch == "weak_supermajorization_chain_up");
    case TheoremId::T4_3:
    case TheoremId::T4_4: return gen_shared_outlier(rng, "eta_between");
  }
  throw ConfigError("unknown theorem id");
}

inline bool branch_holds(const Hypothesis& h, const std::string& branch) {
  if (!h.holds) return false;
  for (const auto& c : h.conditions) {
    if (c.name == branch) return c.holds;
  }
  return false;
}

}  // namespace detail

/// Draws one instance satisfying the named branch of the theorem's hypothesis.
/// Deterministic in (seed, trial, branch index).
inline TheoremCase generate_case(TheoremId id, const std::string& branch, std::uint64_t seed,
                                 std::size_t trial, const GridSpec& grid = GridSpec::default_grid()) {
  const auto branches = hypothesis_branches(id);
  const auto it = std::find(branches.begin(), branches.end(), branch);
  if (it == branches.end()) {
    throw ConfigError("unknown branch '" + branch + "' for " + std::string(to_string(id)));
  }
  const auto branch_index = static_cast<std::uint64_t>(it - branches.begin());
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(branch_index)};
  detail::Rng rng(seq);
  for (int attempt = 0; attempt < detail::kGenerationRetries; ++attempt) {
    TheoremCase c{id, detail::random_baseline(rng), detail::generate_inputs(rng, id, branch), grid};
    if (detail::branch_holds(hypothesis(c), branch)) return c;
  }
  throw GenerationError("could not satisfy " + branch + " for " + std::string(to_string(id)) +
                        " after " + std::to_string(detail::kGenerationRetries) + " attempts");
}

/// Runs n_trials generated instances. Without a branch, trial i targets
/// branch i mod (number of branches); with one, every trial targets it.
inline SweepReport sweep(TheoremId id, std::size_t n_trials, std::uint64_t seed,
                         const std::optional<std::string>& branch = std::nullopt,
                         const GridSpec& grid = GridSpec::default_grid()) {
  if (n_trials < 1) throw ConfigError("sweep: n_trials must be >= 1");
  grid.validate();
  std::vector<std::string> targets = hypothesis_branches(id);
  if (branch) {
    if (std::find(targets.begin(), targets.end(), *branch) == targets.end()) {
      throw ConfigError("unknown branch '" + *branch + "' for " + std::string(to_string(id)));
    }
    targets = {*branch};
  }
  SweepReport out{id, seed, n_trials, 0, {}, {}};
  for (const auto& b : targets) out.branches.push_back({b, 0, 0});
  for (std::size_t i = 0; i < n_trials; ++i) {
    const std::size_t k = i % targets.size();
    TheoremCase c = generate_case(id, targets[k], seed, i, grid);
    TheoremReport r = verify(c);
    ++out.branches[k].trials;
    if (r.consistent) {
      ++out.branches[k].consistent;
      ++out.consistent;
    } else {
      out.inconsistencies.push_back({i, targets[k], std::move(c), std::move(r)});
    }
  }
  return out;
}

}  // namespace pomodel
