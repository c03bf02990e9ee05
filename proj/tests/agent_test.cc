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

#include "ldpmarl/agent.h"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "gtest/gtest.h"
#include "ldpmarl/errors.h"

namespace ldpmarl {
namespace {

TEST(QTableTest, ZeroInitializedWithDimensions) {
  QTable q(25, 5);
  EXPECT_EQ(q.num_states(), 25);
  EXPECT_EQ(q.num_actions(), 5);
  for (double v : q.values()) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(q.at(25, 0), PreconditionError);
  EXPECT_THROW(q.set(0, 0, std::numeric_limits<double>::infinity()),
               NumericError);
  const std::array<double, 4> short_row = {1, 2, 3, 4};
  EXPECT_THROW(q.SetRow(0, short_row), ProtocolError);
}

TEST(QTableTest, CsvExport) {
  QTable q(2, 2);
  q.set(1, 0, 0.25);
  std::ostringstream out;
  WriteQTableCsv(q, out);
  EXPECT_EQ(out.str(), "state,action,q\n0,0,0\n0,1,0\n1,0,0.25\n1,1,0\n");
}

TEST(SelectActionTest, GreedyTieBreaksToLowestIndex) {
  QTable q(1, 5);
  LearnerParams p;
  p.epsilon = 0.0;
  Rng rng(1);
  EXPECT_EQ(SelectAction(q, 0, p, rng), 0);
  q.SetRow(0, std::array<double, 5>{1, 5, 2, 0, 0});
  EXPECT_EQ(SelectAction(q, 0, p, rng), 1);
  q.SetRow(0, std::array<double, 5>{1, 5, 5, 0, 5});
  EXPECT_EQ(SelectAction(q, 0, p, rng), 1);
}

TEST(SelectActionTest, ZeroEpsilonIsDeterministic) {
  QTable q(3, 5);
  q.set(2, 3, 0.7);
  LearnerParams p;
  p.epsilon = 0.0;
  Rng rng(9);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(SelectAction(q, 2, p, rng), 3);
}

TEST(SelectActionTest, FullExplorationIsUniform) {
  QTable q(1, 5);
  q.set(0, 2, 100.0);
  LearnerParams p;
  p.epsilon = 1.0;
  Rng rng(2024);
  constexpr int kDraws = 100000;
  std::array<int, 5> counts{};
  for (int i = 0; i < kDraws; ++i) ++counts[SelectAction(q, 0, p, rng)];
  // Multinomial oracle: each count ~ Binomial(n, 1/5).
  const double expected = kDraws / 5.0;
  const double sigma = std::sqrt(kDraws * 0.2 * 0.8);
  for (int c : counts) EXPECT_LT(std::fabs(c - expected), 3.0 * sigma);
}

TEST(QUpdateTest, HandEvaluatedStep) {
  QTable q(2, 5);
  LearnerParams p;  // alpha 0.1, discount 0.8
  const double v = QUpdate(q, 0, 1, 10.0, 1, false, p);
  // Oracle: (1 - 0.1) * 0 + 0.1 * (10 + 0.8 * 0).
  EXPECT_DOUBLE_EQ(v, 0.9 * 0.0 + 0.1 * (10.0 + 0.8 * 0.0));
  EXPECT_DOUBLE_EQ(v, 1.0);
  EXPECT_EQ(q.at(0, 1), v);
}

TEST(QUpdateTest, ZeroAlphaLeavesEntry) {
  QTable q(2, 5);
  q.set(0, 0, 3.0);
  q.set(1, 2, 7.0);
  LearnerParams p;
  p.alpha = 0.0;
  EXPECT_EQ(QUpdate(q, 0, 0, 5.0, 1, false, p), 3.0);
}

TEST(QUpdateTest, BellmanFixedPoint) {
  QTable q(2, 5);
  LearnerParams p;
  const double v = 4.0;
  q.set(0, 3, v);
  q.set(1, 0, v);
  EXPECT_DOUBLE_EQ(QUpdate(q, 0, 3, v * (1 - p.discount), 1, false, p), v);
}

TEST(QUpdateTest, TerminalDropsBootstrap) {
  QTable q(2, 5);
  q.set(1, 0, 50.0);
  LearnerParams p;
  EXPECT_DOUBLE_EQ(QUpdate(q, 0, 0, 10.0, 1, true, p), 1.0);
}

TEST(QUpdateTest, NonFiniteRewardIsNumericError) {
  QTable q(2, 5);
  LearnerParams p;
  EXPECT_THROW(QUpdate(q, 0, 0, std::nan(""), 1, false, p), NumericError);
}

TEST(QUpdateTest, OnlyOneEntryChanges) {
  Rng rng(3);
  QTable q(6, 5);
  for (StateId s = 0; s < 6; ++s) {
    for (int a = 0; a < 5; ++a) q.set(s, a, rng.Uniform() * 4 - 2);
  }
  const QTable before = q;
  LearnerParams p;
  QUpdate(q, 2, 4, 0.5, 5, false, p);
  int changed = 0;
  for (size_t i = 0; i < q.values().size(); ++i) {
    if (q.values()[i] != before.values()[i]) ++changed;
  }
  EXPECT_EQ(changed, 1);
}

TEST(QUpdateTest, ContractionTowardTarget) {
  Rng rng(77);
  LearnerParams p;
  for (int trial = 0; trial < 1000; ++trial) {
    p.alpha = 0.01 + 0.99 * rng.Uniform();
    p.discount = 0.99 * rng.Uniform();
    QTable q(2, 5);
    for (StateId s = 0; s < 2; ++s) {
      for (int a = 0; a < 5; ++a) q.set(s, a, rng.Uniform() * 20 - 10);
    }
    const double reward = rng.Uniform() * 12 - 2;
    const double old = q.at(0, 2);
    const double target = reward + p.discount * q.MaxValue(1);
    const double updated = QUpdate(q, 0, 2, reward, 1, false, p);
    EXPECT_NEAR(std::fabs(updated - target),
                (1 - p.alpha) * std::fabs(old - target), 1e-12);
  }
}

TEST(LearnerParamsTest, DefaultsAndValidation) {
  LearnerParams p;
  EXPECT_EQ(p.alpha, 0.10);
  EXPECT_EQ(p.discount, 0.80);
  EXPECT_EQ(p.epsilon, 0.08);
  EXPECT_NO_THROW(p.Validate());
  p.discount = 1.0;
  EXPECT_THROW(p.Validate(), ConfigError);
}

TEST(AgentTest, StreamsAreIndependentPerAgent) {
  Agent a(0, 4, 123), b(1, 4, 123), a2(0, 4, 123);
  EXPECT_EQ(a.policy_rng.Uniform(), a2.policy_rng.Uniform());
  Agent c(0, 4, 123);
  EXPECT_NE(c.policy_rng.Uniform(), b.policy_rng.Uniform());
  EXPECT_EQ(a.budget.remaining_ask, 100000);
  EXPECT_EQ(a.visits.size(), 4u);
}

}  // namespace
}  // namespace ldpmarl
