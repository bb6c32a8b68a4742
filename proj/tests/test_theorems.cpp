#include <gtest/gtest.h>

#include <algorithm>
#include <string>

#include "pomodel/sweep.hpp"
#include "pomodel/theorems.hpp"

using namespace pomodel;

namespace {

const Baseline kExp1 = Baseline::exponential(1.0);

bool condition(const Hypothesis& h, const std::string& name) {
  for (const auto& c : h.conditions) {
    if (c.name == name) return c.holds;
  }
  ADD_FAILURE() << "no condition " << name;
  return false;
}

}  // namespace

TEST(TheoremIds, RoundTrip) {
  for (TheoremId id : kAllTheorems) EXPECT_EQ(parse_theorem_id(to_string(id)), id);
  EXPECT_THROW(parse_theorem_id("T9.9"), ConfigError);
}

TEST(Hypothesis, Examples) {
  TheoremCase t31{TheoremId::T3_1, kExp1, HeterogeneousPair{{2, 3, 5}, {2.8, 3.2, 3.4}}};
  EXPECT_TRUE(hypothesis(t31).holds);

  TheoremCase t34{TheoremId::T3_4, kExp1, OutlierPair{2.5, 2.5, 2.5, 2.5, 2, 1}};
  EXPECT_TRUE(hypothesis(t34).holds);

  TheoremCase t42{TheoremId::T4_2, kExp1, HomogeneousComparison{{2, 8}, 4.0}};
  EXPECT_TRUE(hypothesis(t42).holds);
  TheoremCase t42_off{TheoremId::T4_2, kExp1, HomogeneousComparison{{2, 8}, 4.001}};
  EXPECT_FALSE(hypothesis(t42_off).holds);
}

TEST(Hypothesis, BreakdownNamesEveryCondition) {
  TheoremCase c{TheoremId::T3_3, kExp1, OutlierPair{1.0, 3.0, 1.5, 2.5, 2, 2}};
  const auto h = hypothesis(c);
  EXPECT_TRUE(condition(h, "lambda_majorizes_mu"));
  EXPECT_TRUE(condition(h, "e_plus_and_n1_ge_n2"));
  EXPECT_FALSE(condition(h, "d_plus_and_n1_le_n2"));
  EXPECT_TRUE(h.holds);

  // Required condition fails: alternatives alone do not make the hypothesis hold.
  TheoremCase bad{TheoremId::T3_3, kExp1, OutlierPair{1.0, 3.0, 1.5, 3.0, 2, 2}};
  EXPECT_FALSE(hypothesis(bad).holds);
}

TEST(Hypothesis, T35SplitsOnEtaPosition) {
  auto h = [](double l, double m, double e) {
    return hypothesis(TheoremCase{TheoremId::T3_5, kExp1, SharedOutlierPair{l, m, e, 1, 1}});
  };
  EXPECT_TRUE(condition(h(1, 3, 2), "eta_between"));
  EXPECT_TRUE(condition(h(1, 3, 4), "eta_above"));
  EXPECT_TRUE(condition(h(2, 3, 0.5), "eta_below"));
  EXPECT_FALSE(h(3, 2, 2.5).holds);
  EXPECT_EQ(hypothesis_branches(TheoremId::T3_5).size(), 3u);
}

TEST(Hypothesis, ShapeMismatchIsConfigError) {
  TheoremCase c{TheoremId::T3_1, kExp1, HomogeneousComparison{{1, 2}, 1.5}};
  EXPECT_THROW(hypothesis(c), ConfigError);
  TheoremCase d{TheoremId::T3_1, kExp1, HeterogeneousPair{{1, 2}, {1, 2, 3}}};
  EXPECT_THROW(hypothesis(d), DimensionError);
}

TEST(Verify, Examples) {
  const auto r = verify({TheoremId::T3_2, kExp1, HeterogeneousPair{{1, 4}, {2, 3}}});
  EXPECT_TRUE(r.hypothesis.holds);
  ASSERT_TRUE(r.verdict.has_value());
  EXPECT_EQ(r.verdict->relation, Relation::hr);
  EXPECT_TRUE(r.consistent);

  const auto vac = verify({TheoremId::T3_1, kExp1, HeterogeneousPair{{2.2, 3, 5}, {2.8, 3.2, 3.3}}});
  EXPECT_FALSE(vac.hypothesis.holds);
  EXPECT_FALSE(vac.verdict.has_value());
  EXPECT_TRUE(vac.consistent);

  const auto t43 = verify({TheoremId::T4_3, kExp1, SharedOutlierPair{1, 3, 2, 2, 2}});
  EXPECT_TRUE(t43.hypothesis.holds);
  EXPECT_EQ(t43.verdict->relation, Relation::ageing_rhr);
  EXPECT_TRUE(t43.consistent);
}

TEST(Verify, ConclusionMapping) {
  EXPECT_EQ(conclusion_of(TheoremId::C3_1).relation, Relation::st);
  EXPECT_EQ(conclusion_of(TheoremId::C3_2).relation, Relation::hr);
  EXPECT_EQ(conclusion_of(TheoremId::T3_5).relation, Relation::ageing_hr);
  EXPECT_EQ(conclusion_of(TheoremId::T3_9).relation, Relation::lr);
  EXPECT_EQ(conclusion_of(TheoremId::C4_1).relation, Relation::rhr);
  EXPECT_EQ(conclusion_of(TheoremId::T4_2).relation, Relation::st);
  EXPECT_TRUE(conclusion_of(TheoremId::T4_2).swapped);
  EXPECT_FALSE(conclusion_of(TheoremId::T4_3).swapped);
  EXPECT_EQ(conclusion_of(TheoremId::T4_4).relation, Relation::lr);
}

TEST(Verify, T35EtaBelowCanFail) {
  // eta below both block parameters: the ageing order does not follow.
  const auto r = verify({TheoremId::T3_5, kExp1, SharedOutlierPair{2, 3, 0.5, 1, 1}});
  EXPECT_TRUE(r.hypothesis.holds);
  EXPECT_FALSE(r.consistent);
  const auto ok = verify({TheoremId::T3_5, kExp1, SharedOutlierPair{1, 3, 2, 1, 1}});
  EXPECT_TRUE(ok.consistent);
}

TEST(GenerateCase, SatisfiesBranchAndIsDeterministic) {
  for (TheoremId id : kAllTheorems) {
    for (const auto& b : hypothesis_branches(id)) {
      for (std::size_t trial = 0; trial < 10; ++trial) {
        const auto c = generate_case(id, b, 42, trial);
        const auto h = hypothesis(c);
        EXPECT_TRUE(h.holds) << to_string(id) << " " << b;
        EXPECT_TRUE(condition(h, b)) << to_string(id) << " " << b;
        EXPECT_EQ(c, generate_case(id, b, 42, trial));
      }
    }
  }
  EXPECT_NE(generate_case(TheoremId::T3_1, "lambda_p_larger_mu", 1, 0),
            generate_case(TheoremId::T3_1, "lambda_p_larger_mu", 2, 0));
}

TEST(GenerateCase, T42ExactGeometricMean) {
  for (std::size_t trial = 0; trial < 50; ++trial) {
    const auto c = generate_case(TheoremId::T4_2, "common_eq_geometric_mean", 3, trial);
    const auto& in = std::get<HomogeneousComparison>(c.inputs);
    EXPECT_NEAR(in.common, in.lambda.geometric_mean(), 1e-12 * in.common);
  }
}

TEST(Sweep, SmallDeterministicRuns) {
  const auto a = sweep(TheoremId::T3_2, 40, 1);
  EXPECT_EQ(a.consistent, 40u);
  EXPECT_TRUE(a.all_consistent());
  const auto t34 = sweep(TheoremId::T3_4, 1, 5);
  EXPECT_TRUE(t34.all_consistent());

  const auto r1 = sweep(TheoremId::T3_8, 24, 9);
  const auto r2 = sweep(TheoremId::T3_8, 24, 9);
  ASSERT_EQ(r1.branches.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(r1.branches[i].trials, 6u);
    EXPECT_EQ(r1.branches[i].consistent, r2.branches[i].consistent);
  }
}

TEST(Sweep, BranchSelectionAndErrors) {
  const auto r = sweep(TheoremId::T3_6, 10, 4, std::string("chain_down_and_n1_le_n2"));
  ASSERT_EQ(r.branches.size(), 1u);
  EXPECT_EQ(r.branches[0].trials, 10u);
  EXPECT_THROW(sweep(TheoremId::T3_6, 10, 4, std::string("nope")), ConfigError);
  EXPECT_THROW(sweep(TheoremId::T3_6, 0, 4), ConfigError);
  EXPECT_THROW(generate_case(TheoremId::T3_1, "nope", 1, 0), ConfigError);
}

TEST(Sweep, InconsistenciesCarryFullDetail) {
  const auto r = sweep(TheoremId::T3_5, 30, 42, std::string("eta_below"));
  EXPECT_LT(r.consistent, 30u);
  ASSERT_FALSE(r.inconsistencies.empty());
  const auto& bad = r.inconsistencies.front();
  EXPECT_EQ(bad.branch, "eta_below");
  EXPECT_TRUE(bad.report.hypothesis.holds);
  ASSERT_TRUE(bad.report.verdict.has_value());
  EXPECT_FALSE(bad.report.verdict->witnesses.empty());
  // Re-running the recorded instance reproduces the failure.
  EXPECT_FALSE(verify(bad.instance).consistent);
}
