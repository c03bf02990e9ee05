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

#include "ldpmarl/simulation.h"

#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "golden.h"
#include "ldpmarl/errors.h"

namespace ldpmarl {
namespace {

using ::ldpmarl::testing::GoldenConfig;
using ::ldpmarl::testing::GoldenText;
using ::ldpmarl::testing::RunGoldenQLearning;
using ::ldpmarl::testing::SimulationText;

std::string GoldenFor(const ExperimentConfig& c, uint64_t seed, int episodes) {
  const auto g = RunGoldenQLearning(c, seed, episodes);
  return GoldenText(g.steps, g.rewards, g.winners, g.q);
}

TEST(SimulationTest, UnitWeightNoAttackersMatchesPlainQLearning) {
  for (uint64_t seed : {1u, 2u, 42u}) {
    const ExperimentConfig c = GoldenConfig("small", 150);
    EXPECT_EQ(SimulationText(c, seed, 150), GoldenFor(c, seed, 150)) << seed;
  }
  const ExperimentConfig medium = GoldenConfig("medium", 60);
  EXPECT_EQ(SimulationText(medium, 7, 60), GoldenFor(medium, 7, 60));
}

TEST(SimulationTest, GoldenHoldsWithoutPrivacyOrDetector) {
  ExperimentConfig c = GoldenConfig("small", 80);
  c.privacy_enabled = false;
  c.detector.enabled = false;
  EXPECT_EQ(SimulationText(c, 3, 80), GoldenFor(c, 3, 80));
}

TEST(SimulationTest, AdviceWeightBreaksTheGolden) {
  // Guards against a vacuous comparison.
  ExperimentConfig c = GoldenConfig("small", 80);
  c.advice.aggregation.weight = 0.9;
  EXPECT_NE(SimulationText(c, 1, 80), GoldenFor(c, 1, 80));
}

TEST(SimulationTest, SameSeedSameRun) {
  ExperimentConfig c = ExperimentConfig::Defaults("small");
  c.attack.attacker_ratio = 0.4;
  std::ostringstream a1, a2, l1, l2;
  Simulation s1(c, 5, std::nullopt, {&a1, &l1, nullptr});
  Simulation s2(c, 5, std::nullopt, {&a2, &l2, nullptr});
  const auto r1 = s1.Run(40);
  const auto r2 = s2.Run(40);
  for (size_t i = 0; i < r1.size(); ++i) {
    EXPECT_EQ(r1[i].steps, r2[i].steps);
    EXPECT_EQ(r1[i].cumulative_reward, r2[i].cumulative_reward);
    EXPECT_EQ(r1[i].gamma_samples, r2[i].gamma_samples);
  }
  EXPECT_EQ(a1.str(), a2.str());
  EXPECT_EQ(l1.str(), l2.str());
  for (size_t i = 0; i < s1.agents().size(); ++i) {
    EXPECT_EQ(s1.agents()[i].q, s2.agents()[i].q);
  }
}

TEST(SimulationTest, StepLimitEndsEpisode) {
  ExperimentConfig c = ExperimentConfig::Defaults("medium");
  c.world.step_limit = 2;
  Simulation sim(c, 1);
  for (const EpisodeMetrics& m : sim.Run(20)) {
    EXPECT_GE(m.steps, 1);
    EXPECT_LE(m.steps, 2);
    if (!m.goal_reached) {
      EXPECT_EQ(m.steps, 2);
      EXPECT_EQ(m.winner, -1);
    }
  }
}

TEST(SimulationTest, StepsStayWithinLimit) {
  ExperimentConfig c = ExperimentConfig::Defaults("small");
  c.attack.attacker_ratio = 0.2;
  Simulation sim(c, 9);
  for (const EpisodeMetrics& m : sim.Run(100)) {
    EXPECT_GE(m.steps, 1);
    EXPECT_LE(m.steps, c.world.step_limit);
    if (m.goal_reached) EXPECT_GE(m.winner, 0);
  }
}

TEST(SimulationTest, AttackersPoisonAndLogGamma) {
  ExperimentConfig c = ExperimentConfig::Defaults("medium");
  c.attack.attacker_ratio = 0.4;
  std::ostringstream attacks;
  Simulation sim(c, 2, std::nullopt, {&attacks, nullptr, nullptr});
  EXPECT_EQ(sim.attacker_ids().size(), 4u);
  int64_t malicious = 0;
  size_t gammas = 0;
  for (const EpisodeMetrics& m : sim.Run(30)) {
    malicious += m.malicious_records;
    gammas += m.gamma_samples.size();
    for (int g : m.gamma_samples) {
      EXPECT_GE(g, 1);
      EXPECT_LE(g, c.attack.tau_gamma + 1);
    }
  }
  EXPECT_GT(malicious, 0);
  EXPECT_EQ(static_cast<int64_t>(gammas), malicious);
  std::istringstream in(attacks.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line,
            "episode,step,attacker,advisee,state,gamma,mu_star,c,accepted_by,"
            "fallback,external");
  size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, gammas);
}

TEST(SimulationTest, AttackersAreNestedAcrossRatios) {
  ExperimentConfig c = ExperimentConfig::Defaults("medium");
  c.attack.attacker_ratio = 0.2;
  Simulation low(c, 4);
  c.attack.attacker_ratio = 0.4;
  Simulation high(c, 4);
  for (int id : low.attacker_ids()) {
    EXPECT_NE(std::find(high.attacker_ids().begin(), high.attacker_ids().end(), id),
              high.attacker_ids().end());
  }
}

TEST(SimulationTest, DeltaQAgainstReference) {
  ExperimentConfig c = ExperimentConfig::Defaults("small");
  Simulation plain(c, 1);
  EXPECT_EQ(plain.RunEpisode().delta_q, 0.0);
  QTable ref(25, kNumActions);
  Simulation sim(c, 1, ref);
  const EpisodeMetrics m = sim.RunEpisode();
  double sum = 0.0;
  for (const Agent& a : sim.agents()) sum += DeltaQ(a.q, ref);
  EXPECT_DOUBLE_EQ(m.delta_q, sum / sim.agents().size());
  EXPECT_THROW(Simulation(c, 1, QTable(24, kNumActions)), PreconditionError);
}

TEST(SimulationTest, BlockingDetectorDropsAlarmedAdvice) {
  ExperimentConfig c = ExperimentConfig::Defaults("small");
  c.attack.attacker_ratio = 0.4;
  c.detector.tau = 0.01;
  c.detector.kappa = 1.0;
  c.detector.blocking = true;
  std::ostringstream alarms;
  Simulation sim(c, 1, std::nullopt, {nullptr, &alarms, nullptr});
  int64_t total = 0;
  for (const EpisodeMetrics& m : sim.Run(5)) total += m.alarms;
  EXPECT_GT(total, 0);
  EXPECT_NE(alarms.str().find("max_deviation"), std::string::npos);
}

TEST(SimulationTest, MeanTableAndBaselineConfig) {
  ExperimentConfig c = ExperimentConfig::Defaults("small");
  std::vector<Agent> agents;
  agents.emplace_back(0, 2, 1);
  agents.emplace_back(1, 2, 1);
  agents[0].q.set(1, 2, 2.0);
  agents[1].q.set(1, 2, 4.0);
  EXPECT_EQ(MeanQTable(agents).at(1, 2), 3.0);
  EXPECT_THROW(MeanQTable({}), PreconditionError);
  c.attack.attacker_ratio = 0.4;
  const ExperimentConfig b = BaselineConfig(c);
  EXPECT_EQ(b.attack.attacker_ratio, 0.0);
  EXPECT_FALSE(b.privacy_enabled);
  EXPECT_EQ(b.campaign.episodes, c.campaign.baseline_episodes);
}

}  // namespace
}  // namespace ldpmarl
