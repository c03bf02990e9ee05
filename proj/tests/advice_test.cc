// Copyright 2026 The ldpmarl Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ldpmarl/advice.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "ldpmarl/errors.h"

namespace ldpmarl {
namespace {

// A 5x5 world with agents placed by hand and no obstacles or freeways.
struct Fixture {
  explicit Fixture(std::vector<Cell> cells) {
    spec.height = 5;
    spec.width = 5;
    spec.num_agents = static_cast<int>(cells.size());
    spec.num_obstacles = 0;
    spec.num_freeways = 0;
    Rng layout(1);
    world.emplace(spec, layout);
    for (int i = 0; i < spec.num_agents; ++i) {
      world->SetAgentPosition(i, cells[i]);
      agents.emplace_back(i, world->num_states(), 1234);
    }
    advice.ask_rule = RequestRule::kConstant;
    advice.give_rule = RequestRule::kConstant;
    ctx.advice = &advice;
    ctx.privacy = &privacy;
  }

  WorldSpec spec;
  std::optional<GridWorld> world;
  std::vector<Agent> agents;
  AdviceParams advice;
  PrivacyParams privacy;
  AdviceContext ctx;
};

TEST(RequestProbabilityTest, Values) {
  EXPECT_EQ(RequestProbability(0), 1.0);
  // 1 / sqrt(4)
  EXPECT_DOUBLE_EQ(RequestProbability(3), 1.0 / std::sqrt(4.0));
  EXPECT_DOUBLE_EQ(RequestProbability(3), 0.5);
  for (int n = 0; n < 100; ++n) {
    EXPECT_GE(RequestProbability(n), RequestProbability(n + 1));
  }
  EXPECT_THROW(RequestProbability(-1), PreconditionError);
}

TEST(AdviceParamsTest, DefaultsAndRules) {
  AdviceParams p;
  EXPECT_EQ(p.aggregation.weight, 0.90);
  EXPECT_EQ(p.aggregation.zone_radius, 2);
  EXPECT_EQ(p.ask_budget, 100000);
  EXPECT_EQ(p.attacker_give_budget, 10000);
  EXPECT_DOUBLE_EQ(p.AskProbability(8), 1.0 / 3.0);
  p.ask_rule = RequestRule::kConstant;
  p.ask_constant = 0.25;
  EXPECT_EQ(p.AskProbability(8), 0.25);
  EXPECT_EQ(ParseRequestRule("inverse_sqrt"), RequestRule::kInverseSqrt);
  EXPECT_EQ(ParseRequestRule("constant"), RequestRule::kConstant);
  EXPECT_FALSE(ParseRequestRule("bogus").has_value());
  p.aggregation.weight = 1.5;
  EXPECT_THROW(p.Validate(), ConfigError);
}

TEST(GatherAdviceTest, ZeroRadiusGivesNothing) {
  Fixture f({{2, 2}, {0, 0}, {2, 3}});
  f.advice.aggregation.zone_radius = 0;
  const AdviceRound r = GatherAdvice(0, 12, *f.world, f.agents, f.ctx);
  EXPECT_TRUE(r.asked);
  EXPECT_TRUE(r.records.empty());
}

TEST(GatherAdviceTest, ExhaustedBudgetsGiveNothing) {
  Fixture f({{2, 2}, {2, 3}, {3, 3}});
  for (Agent& a : f.agents) {
    a.budget.remaining_ask = 0;
    a.budget.remaining_give = 0;
  }
  EXPECT_TRUE(GatherAdvice(0, 12, *f.world, f.agents, f.ctx).records.empty());
  f.agents[0].budget.remaining_ask = 10;
  EXPECT_TRUE(GatherAdvice(0, 12, *f.world, f.agents, f.ctx).records.empty());
}

TEST(GatherAdviceTest, ZoneIsChebyshevBall) {
  // From (2,2): (0,0) and (4,4) at distance 2, (2,3) at 1, (0,4) at 2.
  Fixture f({{2, 2}, {0, 0}, {4, 4}, {2, 3}, {0, 4}});
  f.advice.aggregation.zone_radius = 1;
  const AdviceRound r = GatherAdvice(0, 12, *f.world, f.agents, f.ctx);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].advisor, 3);

  f.advice.aggregation.zone_radius = 2;
  const AdviceRound r2 = GatherAdvice(0, 12, *f.world, f.agents, f.ctx);
  ASSERT_EQ(r2.records.size(), 4u);
  for (const AdviceRecord& rec : r2.records) {
    EXPECT_FALSE(rec.malicious);
    EXPECT_EQ(rec.state, 12);
    ASSERT_EQ(rec.values.size(), 5u);
    for (double v : rec.values) {
      EXPECT_GE(v, f.privacy.lower);
      EXPECT_LE(v, f.privacy.upper);
    }
  }
  EXPECT_TRUE(r2.attacks.empty());
}

TEST(GatherAdviceTest, ThreeAdvisorsThreeRecords) {
  Fixture f({{2, 2}, {1, 1}, {3, 3}, {2, 0}});
  const AdviceRound r = GatherAdvice(0, 7, *f.world, f.agents, f.ctx);
  ASSERT_EQ(r.records.size(), 3u);
  EXPECT_EQ(r.records[0].advisor, 1);
  EXPECT_EQ(r.records[1].advisor, 2);
  EXPECT_EQ(r.records[2].advisor, 3);
  for (const AdviceRecord& rec : r.records) EXPECT_FALSE(rec.malicious);
  EXPECT_EQ(f.agents[0].budget.remaining_ask, 100000 - 3);
  for (int i = 1; i < 4; ++i) {
    EXPECT_EQ(f.agents[i].budget.remaining_give, 100000 - 1);
  }
}

TEST(GatherAdviceTest, WithoutPrivacyRepliesAreClampedRows) {
  Fixture f({{2, 2}, {2, 3}});
  f.ctx.privacy_enabled = false;
  f.agents[1].q.SetRow(7, std::vector<double>{-4.0, 0.5, 3.0, 12.0, 10.0});
  const AdviceRound r = GatherAdvice(0, 7, *f.world, f.agents, f.ctx);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].values,
            (std::vector<double>{-1.5, 0.5, 3.0, 10.0, 10.0}));
}

TEST(GatherAdviceTest, BudgetsBoundTotals) {
  Fixture f({{2, 2}, {2, 3}, {1, 2}, {3, 2}});
  f.advice.ask_constant = 0.7;
  f.advice.give_constant = 0.6;
  f.agents[0].budget.remaining_ask = 40;
  f.agents[2].budget.remaining_give = 5;
  int asks = 0;
  std::vector<int> given(4, 0);
  for (int round = 0; round < 500; ++round) {
    const AdviceRound r = GatherAdvice(0, 12, *f.world, f.agents, f.ctx);
    asks += static_cast<int>(r.records.size());
    for (const AdviceRecord& rec : r.records) ++given[rec.advisor];
  }
  EXPECT_EQ(asks, 40);
  EXPECT_LE(given[2], 5);
  EXPECT_EQ(f.agents[0].budget.remaining_ask, 0);
}

TEST(GatherAdviceTest, CompromisedAdvisorSendsPoisonedVector) {
  Fixture f({{2, 2}, {2, 3}, {1, 2}});
  f.agents[2].compromised = true;
  AttackParams ap;
  const PoisoningAttack attack(ap, f.privacy);
  f.ctx.attack = &attack;
  const AdviceRound r = GatherAdvice(0, 12, *f.world, f.agents, f.ctx);
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_FALSE(r.records[0].malicious);
  EXPECT_TRUE(r.records[1].malicious);
  ASSERT_EQ(r.attacks.size(), 1u);
  EXPECT_EQ(r.attacks[0].attacker, 2);
  EXPECT_EQ(r.attacks[0].vector.values, r.records[1].values);
  for (double v : r.records[1].values) {
    EXPECT_GT(v, f.privacy.lower);
    EXPECT_LT(v, f.privacy.upper);
  }
}

TEST(GatherAdviceTest, AskDrawsComeFromAdviseeStream) {
  // The advisee's policy stream is never touched by advice.
  Fixture f({{2, 2}, {2, 3}});
  Rng copy = f.agents[0].policy_rng;
  GatherAdvice(0, 12, *f.world, f.agents, f.ctx);
  EXPECT_EQ(copy.Uniform(), f.agents[0].policy_rng.Uniform());
}

TEST(AggregateTest, WeightedBlend) {
  const std::vector<double> own = {2.0, 2.0};
  AdviceRecord r;
  r.values = {4.0, 0.0};
  const std::vector<AdviceRecord> advice = {r};
  const std::vector<double> out = Aggregate(own, advice, 0.9);
  // Oracle: w * own + (1 - w) * advice.
  EXPECT_NEAR(out[0], 0.9 * 2.0 + 0.1 * 4.0, 1e-15);
  EXPECT_NEAR(out[1], 0.9 * 2.0 + 0.1 * 0.0, 1e-15);
  EXPECT_NEAR(out[0], 2.2, 1e-12);
  EXPECT_NEAR(out[1], 1.8, 1e-12);
}

TEST(AggregateTest, UnitWeightAndEmptyAdviceKeepOwn) {
  const std::vector<double> own = {1.25, -0.5, 3.0};
  AdviceRecord r;
  r.values = {9.0, 9.0, 9.0};
  const std::vector<AdviceRecord> advice = {r, r};
  EXPECT_EQ(Aggregate(own, advice, 1.0), own);
  EXPECT_EQ(Aggregate(own, {}, 0.9), own);
}

TEST(AggregateTest, LengthMismatchIsProtocolError) {
  const std::vector<double> own = {1.0, 2.0};
  AdviceRecord r;
  r.values = {1.0, 2.0, 3.0};
  const std::vector<AdviceRecord> advice = {r};
  EXPECT_THROW(Aggregate(own, advice, 0.9), ProtocolError);
}

TEST(AggregateTest, PermutationInvariantAndLinear) {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> own(5);
    for (double& v : own) v = rng.Uniform() * 10 - 2;
    std::vector<AdviceRecord> recs(4);
    for (auto& r : recs) {
      r.values.resize(5);
      for (double& v : r.values) v = rng.Uniform() * 10 - 2;
    }
    const double w = rng.Uniform();
    const auto base = Aggregate(own, recs, w);
    std::vector<AdviceRecord> shuffled = {recs[2], recs[0], recs[3], recs[1]};
    const auto perm = Aggregate(own, shuffled, w);
    for (int a = 0; a < 5; ++a) EXPECT_NEAR(base[a], perm[a], 1e-12);
    // Linearity in one record: shifting it by d shifts the output by
    // (1 - w) d / k.
    std::vector<AdviceRecord> shifted = recs;
    for (double& v : shifted[1].values) v += 1.0;
    const auto moved = Aggregate(own, shifted, w);
    for (int a = 0; a < 5; ++a) {
      EXPECT_NEAR(moved[a] - base[a], (1 - w) / 4.0, 1e-12);
    }
  }
}

TEST(ChebyshevDistanceTest, Values) {
  EXPECT_EQ(ChebyshevDistance({0, 0}, {2, 1}), 2);
  EXPECT_EQ(ChebyshevDistance({3, 3}, {3, 3}), 0);
  EXPECT_EQ(ChebyshevDistance({0, 4}, {4, 0}), 4);
}

}  // namespace
}  // namespace ldpmarl
