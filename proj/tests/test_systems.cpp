#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "pomodel/systems.hpp"

using namespace pomodel;

namespace {

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = lo + (hi - lo) * i / (n - 1);
  return t;
}

std::vector<Baseline> baselines() {
  return {Baseline::exponential(1.0), Baseline::exponential(2.0), Baseline::weibull(2.0, 0.8),
          Baseline::weibull(2.0, 3.0), Baseline::weibull(0.7, 1.5)};
}

const std::vector<std::vector<double>> kParamSets{{2.2, 3, 5}, {0.3, 1.7}, {2, 2, 6, 6, 6, 6}, {0.5}, {1, 1, 1}};

}  // namespace

TEST(SeriesSurvival, ReferenceValues) {
  const auto e2 = Baseline::exponential(2.0);
  EXPECT_NEAR(series_survival(SystemModel::series(e2, {2.2, 3, 5}), 0.2), 0.63929, 1e-5);
  EXPECT_NEAR(series_survival(SystemModel::series(e2, {2.8, 3.2, 3.3}), 0.2), 0.641646, 1e-6);
  EXPECT_NEAR(series_survival(SystemModel::series(e2, {2.2, 3, 5}), 0.8), 0.0861549, 1e-7);
  EXPECT_NEAR(series_survival(SystemModel::series(e2, {2.8, 3.2, 3.3}), 0.8), 0.084394, 1e-6);
}

TEST(SeriesSurvival, AgreesWithProductOracle) {
  for (const auto& b : baselines()) {
    for (const auto& p : kParamSets) {
      const auto m = SystemModel::series(b, ParamVector(p));
      for (double t : grid(0.0, 5.0, 51)) {
        const double want = oracle::series_survival(p, b.survival(t));
        EXPECT_NEAR(m.survival(t), want, 1e-13 * std::max(want, 1e-300) + 1e-300);
      }
    }
  }
}

TEST(SeriesSurvival, SingleComponentMatchesPo) {
  const auto b = Baseline::weibull(2.0, 0.8);
  const auto m = SystemModel::series(b, {2.5});
  for (double t : grid(0.0, 2.0, 21)) {
    EXPECT_NEAR(m.survival(t), po_survival(PoParameter(2.5), b, t), 1e-15);
  }
}

TEST(SeriesHazard, ComputedValues) {
  // Sum of 1.2 / (1 - (1 - lambda_i) e^{-1.2 t}) evaluated independently.
  auto h = [](const std::vector<double>& l, double t) {
    double s = 0;
    for (double a : l) s += 1.2 / (1.0 - (1.0 - a) * std::exp(-1.2 * t));
    return s;
  };
  const auto b = Baseline::exponential(1.2);
  const auto x = SystemModel::series(b, {2, 3, 5});
  const auto y = SystemModel::series(b, {2.8, 3.2, 3.4});
  EXPECT_NEAR(series_hazard(x, 0.2), h({2, 3, 5}, 0.2), 1e-13);
  EXPECT_NEAR(series_hazard(x, 0.2), 1.42739159, 1e-8);
  EXPECT_NEAR(series_hazard(y, 0.2), 1.35169583, 1e-8);
  EXPECT_NEAR(series_hazard(x, 1.8), 2.87220007, 1e-8);
  EXPECT_NEAR(series_hazard(y, 1.8), 2.89073795, 1e-8);
  EXPECT_NEAR(series_hazard(SystemModel::series(b, {1, 1, 1, 1}), 0.7), 4 * 1.2, 1e-14);
}

TEST(SeriesHazard, ReferenceNumbersAreRateNormalizedAtShiftedTime) {
  // The quoted 1.2297 / 1.1687 / 2.3935 / 2.4089 are the series hazards
  // divided by the baseline rate, at t = 0.25 for the first pair.
  const auto b = Baseline::exponential(1.2);
  const auto x = SystemModel::series(b, {2, 3, 5});
  const auto y = SystemModel::series(b, {2.8, 3.2, 3.4});
  EXPECT_NEAR(x.hazard(0.25) / 1.2, 1.2297, 1e-4);
  EXPECT_NEAR(y.hazard(0.25) / 1.2, 1.1687, 1e-4);
  EXPECT_NEAR(x.hazard(1.8) / 1.2, 2.3935, 1e-4);
  EXPECT_NEAR(y.hazard(1.8) / 1.2, 2.4089, 1e-4);
}

TEST(SeriesHazard, AdditiveOverComponents) {
  for (const auto& b : baselines()) {
    for (const auto& p : kParamSets) {
      const auto m = SystemModel::series(b, ParamVector(p));
      for (double t : grid(0.01, 4.0, 40)) {
        double sum = 0;
        for (double a : p) sum += po_hazard(PoParameter(a), b, t);
        EXPECT_NEAR(m.hazard(t), sum, 1e-12 * sum);
      }
    }
  }
}

TEST(SeriesHazard, RangeErrorPastUnderflow) {
  const auto m = SystemModel::series(Baseline::exponential(1.0), {2, 3});
  EXPECT_THROW(m.hazard(1000.0), RangeError);
  EXPECT_EQ(m.survival(1000.0), 0.0);
}

TEST(SeriesDensity, IntegratesToOne) {
  const auto m = SystemModel::series(Baseline::exponential(1.0), {2, 3});
  EXPECT_NEAR(oracle::integrate_half_line([&](double t) { return series_density(m, t); }), 1.0, 1e-6);
  const auto one = SystemModel::series(Baseline::exponential(1.3), {1.0});
  EXPECT_NEAR(one.density(0.4), oracle::exp_density(1.3, 0.4), 1e-15);
}

TEST(SeriesDensity, MatchesFiniteDifferences) {
  for (const auto& b : baselines()) {
    for (const auto& p : kParamSets) {
      const auto m = SystemModel::series(b, ParamVector(p));
      for (double t : grid(0.05, 4.0, 40)) {
        const double f = m.density(t);
        if (f < 1e-8) continue;
        EXPECT_NEAR(oracle::negative_derivative([&](double u) { return m.survival(u); }, t), f, 1e-5 * f);
      }
    }
  }
}

TEST(ParallelSurvival, ReferenceValues) {
  const auto b = Baseline::exponential(1.8);
  EXPECT_NEAR(parallel_survival(SystemModel::parallel(b, {2, 3, 5}), 1.5), 0.471629, 1e-6);
  EXPECT_NEAR(parallel_survival(SystemModel::parallel(b, {2.6, 3.2, 3.7}), 1.5), 0.459619, 1e-6);
  EXPECT_NEAR(parallel_survival(SystemModel::parallel(b, {2.5, 3, 5}), 1.2), 0.67176, 1e-5);
  EXPECT_NEAR(parallel_survival(SystemModel::parallel(b, {3, 3.8, 4.4}), 1.2), 0.69449, 1e-5);
  EXPECT_DOUBLE_EQ(parallel_survival(SystemModel::parallel(b, {3, 3.8, 4.4}), 0.0), 1.0);
}

TEST(ParallelSurvival, AgreesWithProductOracle) {
  for (const auto& b : baselines()) {
    for (const auto& p : kParamSets) {
      const auto m = SystemModel::parallel(b, ParamVector(p));
      for (double t : grid(0.0, 5.0, 51)) {
        const double want = oracle::parallel_survival(p, b.survival(t));
        EXPECT_NEAR(m.survival(t), want, 1e-13);
      }
    }
  }
}

TEST(ParallelReversedHazard, AdditiveAndHomogeneousForm) {
  const auto b = Baseline::exponential(2.0);
  const auto m = SystemModel::parallel(b, {2, 3});
  const double want = po_reversed_hazard(PoParameter(2), b, 1.0) + po_reversed_hazard(PoParameter(3), b, 1.0);
  EXPECT_NEAR(parallel_reversed_hazard(m, 1.0), want, 1e-14);
  EXPECT_THROW(parallel_reversed_hazard(m, 0.0), DomainError);
  const double rt = b.reversed_hazard(0.6);
  const double s = b.survival(0.6);
  EXPECT_NEAR(SystemModel::parallel(b, ParamVector::homogeneous(1.7, 4)).reversed_hazard(0.6),
              4 * 1.7 * rt / (1 - (1 - 1.7) * s), 1e-13);
  EXPECT_NEAR(SystemModel::parallel(b, {1, 1, 1}).reversed_hazard(0.6), 3 * rt, 1e-13);
  for (const auto& base : baselines()) {
    for (const auto& p : kParamSets) {
      const auto sys = SystemModel::parallel(base, ParamVector(p));
      for (double t : grid(0.01, 4.0, 40)) {
        double sum = 0;
        for (double a : p) sum += po_reversed_hazard(PoParameter(a), base, t);
        EXPECT_NEAR(sys.reversed_hazard(t), sum, 1e-12 * sum);
      }
    }
  }
}

TEST(ParallelDensity, IntegratesToOneAndMatchesDerivative) {
  const auto m = SystemModel::parallel(Baseline::exponential(2.0), {2, 6});
  EXPECT_NEAR(oracle::integrate_half_line([&](double t) { return parallel_density(m, t); }), 1.0, 1e-6);
  const auto one = SystemModel::parallel(Baseline::exponential(1.3), {1.0});
  EXPECT_NEAR(one.density(0.4), oracle::exp_density(1.3, 0.4), 1e-15);
  for (const auto& b : baselines()) {
    for (const auto& p : kParamSets) {
      const auto sys = SystemModel::parallel(b, ParamVector(p));
      for (double t : grid(0.05, 4.0, 40)) {
        const double f = sys.density(t);
        if (f < 1e-8) continue;
        // Difference the smaller of S and F; the one near 1 cancels.
        const double fd = sys.survival(t) < sys.cdf(t)
                              ? oracle::negative_derivative([&](double u) { return sys.survival(u); }, t)
                              : -oracle::negative_derivative([&](double u) { return sys.cdf(u); }, t);
        EXPECT_NEAR(fd, f, 1e-5 * f) << b.name() << " t=" << t;
      }
    }
  }
}

TEST(Systems, TopologyMismatchIsConfigError) {
  const auto s = SystemModel::series(Baseline::exponential(1.0), {1, 2});
  const auto p = SystemModel::parallel(Baseline::exponential(1.0), {1, 2});
  EXPECT_THROW(parallel_survival(s, 1.0), ConfigError);
  EXPECT_THROW(series_hazard(p, 1.0), ConfigError);
}

TEST(Systems, CoherenceBetweenSeriesComponentsAndParallel) {
  for (const auto& b : baselines()) {
    for (const auto& p : kParamSets) {
      const auto s = SystemModel::series(b, ParamVector(p));
      const auto q = SystemModel::parallel(b, ParamVector(p));
      for (double t : grid(0.0, 5.0, 51)) {
        double lo = 1.0, hi = 0.0;
        for (double a : p) {
          lo = std::min(lo, po_survival(PoParameter(a), b, t));
          hi = std::max(hi, po_survival(PoParameter(a), b, t));
        }
        EXPECT_LE(s.survival(t), lo + 1e-15);
        EXPECT_LE(hi, q.survival(t) + 1e-15);
      }
    }
  }
}

TEST(Systems, SurvivalNonincreasing) {
  for (const auto& b : baselines()) {
    for (const auto& p : kParamSets) {
      for (auto topo : {Topology::series, Topology::parallel}) {
        const SystemModel m(topo, b, ParamVector(p));
        double prev = 1.0;
        for (double t : grid(0.0, 10.0, 400)) {
          const double s = m.survival(t);
          EXPECT_LE(s, prev);
          EXPECT_GE(s, 0.0);
          prev = s;
        }
      }
    }
  }
}

TEST(Homogeneous, MatchesHeterogeneousWithEqualParameters) {
  const auto b = Baseline::weibull(2.0, 0.8);
  for (int n : {1, 2, 4}) {
    const auto s = SystemModel::series(b, ParamVector::homogeneous(3.6, n));
    const auto p = SystemModel::parallel(b, ParamVector::homogeneous(3.6, n));
    for (double t : grid(0.01, 2.0, 50)) {
      EXPECT_NEAR(homogeneous_series_survival(3.6, n, b, t), s.survival(t), 1e-12 * s.survival(t));
      EXPECT_NEAR(homogeneous_parallel_survival(3.6, n, b, t), p.survival(t), 1e-12 * p.survival(t));
      EXPECT_NEAR(homogeneous_series_hazard(3.6, n, b, t), s.hazard(t), 1e-12 * s.hazard(t));
      EXPECT_NEAR(homogeneous_parallel_reversed_hazard(3.6, n, b, t), p.reversed_hazard(t),
                  1e-12 * p.reversed_hazard(t));
    }
  }
  EXPECT_NEAR(homogeneous_series_survival(2.0, 1, b, 0.5), po_survival(PoParameter(2.0), b, 0.5), 1e-15);
  EXPECT_THROW(homogeneous_series_survival(2.0, 0, b, 0.5), DomainError);
}

TEST(Systems, LargeSeriesDoesNotUnderflowEarly) {
  // 200 components: survival is tiny but log-space accumulation keeps the
  // density-to-survival ratio equal to the summed hazard.
  const auto m = SystemModel::series(Baseline::exponential(1.0), ParamVector::homogeneous(0.5, 200));
  const double t = 1.0;
  const auto p = m.evaluate(t);
  EXPECT_GT(p.survival, 0.0);
  EXPECT_NEAR(p.density / p.survival, 200 * po_hazard(PoParameter(0.5), Baseline::exponential(1.0), t), 1e-9);
}
