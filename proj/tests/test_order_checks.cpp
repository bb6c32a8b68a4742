#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "pomodel/order_checks.hpp"

using namespace pomodel;

namespace {

const GridSpec kValueGrid{0.01, 5.0, 1000, Spacing::linear};

SystemModel series(double rate, ParamVector p) { return SystemModel::series(Baseline::exponential(rate), std::move(p)); }
SystemModel parallel(double rate, ParamVector p) { return SystemModel::parallel(Baseline::exponential(rate), std::move(p)); }

}  // namespace

TEST(GridSpec, DefaultAndValidation) {
  const auto g = GridSpec::default_grid();
  EXPECT_EQ(g.count, 2000u);
  EXPECT_EQ(g.spacing, Spacing::logarithmic);
  const auto t = g.points();
  EXPECT_EQ(t.front(), 1e-3);
  EXPECT_EQ(t.back(), 20.0);
  EXPECT_NEAR(t[1] / t[0], t[2] / t[1], 1e-12);
  EXPECT_THROW((GridSpec{0.0, 1.0, 10, Spacing::linear}.validate()), ConfigError);
  EXPECT_THROW((GridSpec{2.0, 1.0, 10, Spacing::linear}.validate()), ConfigError);
  EXPECT_THROW((GridSpec{0.1, 1.0, 1, Spacing::linear}.validate()), ConfigError);
  EXPECT_THROW(check_st(series(1, {1}), series(1, {1}), GridSpec{1.0, 0.5, 10, Spacing::linear}), ConfigError);
  const auto lin = GridSpec{0.5, 1.5, 3, Spacing::linear}.points();
  EXPECT_EQ(lin, (std::vector<double>{0.5, 1.0, 1.5}));
}

TEST(CheckSt, Examples) {
  const auto x = series(2, {2.2, 3, 5});
  const auto y = series(2, {2.8, 3.2, 3.3});
  const auto v = check_st(x, y, kValueGrid);
  EXPECT_FALSE(v.holds);
  bool near_08 = false;
  for (const auto& w : v.witnesses) near_08 = near_08 || std::abs(w.t - 0.8) < 0.05;
  EXPECT_TRUE(near_08);
  EXPECT_TRUE(check_st(x, x).holds);
  EXPECT_TRUE(check_st(series(1, {2, 3}), series(1, {3, 3})).holds);
}

TEST(CheckHr, Examples) {
  const auto x = series(1.2, {2, 3, 5});
  const auto y = series(1.2, {2.8, 3.2, 3.4});
  const auto v = check_hr(x, y, kValueGrid);
  EXPECT_FALSE(v.holds);
  bool near_18 = false;
  for (const auto& w : v.witnesses) near_18 = near_18 || std::abs(w.t - 1.8) < 0.05;
  EXPECT_TRUE(near_18);
  EXPECT_TRUE(check_hr(x, x).holds);
  EXPECT_TRUE(check_hr(series(1, {1, 4}), series(1, {2, 3})).holds);
}

TEST(CheckRhr, Examples) {
  EXPECT_TRUE(check_rhr(parallel(1, {1, 4}), parallel(1, {2, 3})).holds);
  const auto x = parallel(1.8, {2, 3, 5});
  const auto y = parallel(1.8, {2.6, 3.2, 3.7});
  EXPECT_TRUE(check_rhr(x, x).holds);
  const auto st = check_st(x, y, kValueGrid);
  EXPECT_FALSE(st.holds);
  EXPECT_FALSE(check_rhr(x, y, kValueGrid).holds);
  EXPECT_GT(x.survival(1.5), y.survival(1.5));
}

TEST(CheckLr, Examples) {
  EXPECT_TRUE(check_lr(parallel(1, {1, 2}), parallel(1, {3, 2})).holds);
  const auto x = parallel(2, {2, 2, 6, 6, 6, 6});
  const auto y = parallel(2, {3, 3, 5.5, 5.5, 5.5, 5.5});
  EXPECT_TRUE(check_lr(x, x).holds);
  const GridSpec fig{0.01, 3.0, 1000, Spacing::linear};
  EXPECT_FALSE(check_lr(x, y, fig).holds);
  EXPECT_FALSE(check_lr(y, x, fig).holds);
  EXPECT_EQ(detect_nonmonotone([&](double t) { return y.density(t) / x.density(t); }, fig).kind,
            Monotonicity::nonmonotone);
}

TEST(CheckAgeingHr, Examples) {
  // Relative ageing with the heterogeneous or smaller-parameter system as the
  // slower ager: h_Y / h_X nondecreasing.
  const auto x = series(1, {1, 2});
  const auto y = series(1, {3, 4});
  EXPECT_TRUE(check_ageing_hr(y, x).holds);
  EXPECT_FALSE(check_ageing_hr(x, y).holds);
  EXPECT_TRUE(check_ageing_hr(x, x).holds);
  const auto het = series(1, {2, 3, 5});
  const auto hom = series(1, ParamVector::homogeneous(4, 3));
  EXPECT_TRUE(check_ageing_hr(hom, het).holds);
}

TEST(CheckAgeingRhr, Examples) {
  const auto x = parallel(1, {1, 2});
  const auto y = parallel(1, {3, 2});
  EXPECT_TRUE(check_ageing_rhr(x, y).holds);
  EXPECT_TRUE(check_ageing_rhr(x, x).holds);
  const GridSpec fig{0.01, 3.0, 1000, Spacing::linear};
  EXPECT_FALSE(check_ageing_rhr(parallel(2, {0.2, 0.9}), parallel(2, {0.4, 0.9}), fig).holds);
}

TEST(DetectNonmonotone, ConstantAndShapes) {
  const GridSpec g{0.1, 2.0, 100, Spacing::linear};
  EXPECT_EQ(detect_nonmonotone([](double) { return 3.0; }, g).kind, Monotonicity::monotone_up);
  EXPECT_EQ(detect_nonmonotone([](double t) { return t * t; }, g).kind, Monotonicity::monotone_up);
  EXPECT_EQ(detect_nonmonotone([](double t) { return -t; }, g).kind, Monotonicity::monotone_down);
  const auto r = detect_nonmonotone([](double t) { return -(t - 1.0) * (t - 1.0); }, g);
  ASSERT_EQ(r.kind, Monotonicity::nonmonotone);
  ASSERT_TRUE(r.witness.has_value());
  const auto& w = *r.witness;
  EXPECT_LT(w.t[0], w.t[1]);
  EXPECT_LT(w.t[1], w.t[2]);
  EXPECT_LT(w.value[0], w.value[1]);
  EXPECT_GT(w.value[1], w.value[2]);
  EXPECT_NEAR(w.t[1], 1.0, 0.03);
  const auto v = detect_nonmonotone([](double t) { return (t - 1.0) * (t - 1.0); }, g);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_GT(v.witness->value[0], v.witness->value[1]);
  EXPECT_LT(v.witness->value[1], v.witness->value[2]);
}

TEST(DetectNonmonotone, NonFiniteIsEvaluationError) {
  const GridSpec g{0.1, 2.0, 10, Spacing::linear};
  try {
    detect_nonmonotone([](double t) { return t > 1.0 ? std::nan("") : t; }, g);
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    EXPECT_GT(e.t(), 1.0);
  }
}

TEST(OrderVerdict, UnderflowPointsAreSkippedAndFlagged) {
  // Series of 6 components at rate 2: past t ~ 60 the survival underflows.
  const auto a = series(2, {2, 2, 6, 6, 6, 6});
  const auto b = series(2, {3, 3, 5.5, 5.5, 5.5, 5.5});
  const GridSpec wide{1.0, 400.0, 200, Spacing::linear};
  const auto v = check_lr(a, b, wide);
  EXPECT_GT(v.skipped, 0u);
  EXPECT_TRUE(v.degraded);
  const auto ok = check_lr(a, b, GridSpec{0.01, 5.0, 200, Spacing::linear});
  EXPECT_EQ(ok.skipped, 0u);
  EXPECT_FALSE(ok.degraded);
}

namespace {

SystemModel random_system(std::mt19937_64& rng, Topology topo, const Baseline& base) {
  std::uniform_int_distribution<int> n(1, 4);
  std::uniform_real_distribution<double> u(0.2, 5.0);
  std::vector<double> p(static_cast<std::size_t>(n(rng)));
  for (auto& v : p) v = u(rng);
  return {topo, base, ParamVector(p)};
}

}  // namespace

TEST(OrderProperties, ImplicationChainAndWitnessSoundness) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const GridSpec g{0.01, 8.0, 400, Spacing::linear};
  for (int trial = 0; trial < 150; ++trial) {
    const Baseline base = trial % 2 ? Baseline::exponential(0.5 + u(rng)) : Baseline::weibull(0.6 + u(rng), 1.0 + u(rng));
    const Topology topo = trial % 3 ? Topology::series : Topology::parallel;
    auto a = random_system(rng, topo, base);
    auto b = trial % 4 == 0 ? SystemModel(topo, base, a.params()) : random_system(rng, topo, base);
    if (a.params().size() != b.params().size()) b = SystemModel(topo, base, ParamVector::homogeneous(2.0, a.params().size()));
    const auto st = check_st(a, b, g);
    const auto hr = check_hr(a, b, g);
    const auto rhr = check_rhr(a, b, g);
    const auto lr = check_lr(a, b, g);
    if (lr.holds) {
      EXPECT_TRUE(hr.holds) << "trial " << trial;
      EXPECT_TRUE(rhr.holds) << "trial " << trial;
    }
    if (hr.holds) { EXPECT_TRUE(st.holds) << "trial " << trial; }
    if (rhr.holds) { EXPECT_TRUE(st.holds) << "trial " << trial; }
    for (const auto& w : st.witnesses) {
      EXPECT_GT(a.survival(w.t) - b.survival(w.t), kProbabilityTol / 2);
    }
    for (const auto& w : hr.witnesses) {
      EXPECT_LT(a.hazard(w.t), b.hazard(w.t));
    }
    if (st.holds && check_st(b, a, g).holds) {
      for (double t : g.points()) EXPECT_NEAR(a.survival(t), b.survival(t), 2 * kProbabilityTol);
    }
  }
}

TEST(OrderProperties, ViolationsPersistOnFinerGrid) {
  const auto x = series(2, {2.2, 3, 5});
  const auto y = series(2, {2.8, 3.2, 3.3});
  for (std::size_t n : {100u, 1000u, 5000u}) {
    EXPECT_FALSE(check_st(x, y, GridSpec{0.01, 5.0, n, Spacing::linear}).holds);
  }
  const auto a = parallel(2, {0.2, 0.9});
  const auto b = parallel(2, {0.4, 0.9});
  for (std::size_t n : {200u, 1000u, 4000u}) {
    EXPECT_FALSE(check_ageing_rhr(a, b, GridSpec{0.01, 3.0, n, Spacing::linear}).holds);
  }
}

TEST(Check, DispatcherMatchesDirectCalls) {
  const auto a = series(1, {1, 4});
  const auto b = series(1, {2, 3});
  for (Relation r : {Relation::st, Relation::hr, Relation::rhr, Relation::lr, Relation::ageing_hr, Relation::ageing_rhr}) {
    const auto v = check(r, a, b);
    EXPECT_EQ(v.relation, r);
  }
  EXPECT_EQ(check(Relation::hr, a, b).holds, check_hr(a, b).holds);
}
