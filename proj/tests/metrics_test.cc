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

#include "ldpmarl/metrics.h"

#include <cmath>
#include <sstream>
#include <vector>

#include "gtest/gtest.h"
#include "ldpmarl/errors.h"

namespace ldpmarl {
namespace {

QTable Filled(int states, double v) {
  QTable q(states, kNumActions);
  for (int s = 0; s < states; ++s) {
    for (int a = 0; a < kNumActions; ++a) q.set(s, a, v);
  }
  return q;
}

QTable Random(int states, Rng& rng) {
  QTable q(states, kNumActions);
  for (int s = 0; s < states; ++s) {
    for (int a = 0; a < kNumActions; ++a) q.set(s, a, rng.Uniform() * 10 - 3);
  }
  return q;
}

TEST(DeltaQTest, Examples) {
  EXPECT_EQ(DeltaQ(Filled(4, 2.5), Filled(4, 2.5)), 0.0);
  EXPECT_EQ(DeltaQ(Filled(4, 1.0), Filled(4, 0.0)), 1.0);
  EXPECT_THROW(DeltaQ(Filled(4, 1.0), Filled(5, 1.0)), PreconditionError);
}

TEST(DeltaQTest, MatchesBruteForce) {
  Rng rng(3);
  const QTable a = Random(9, rng), b = Random(9, rng);
  double sum = 0.0;
  for (int s = 0; s < 9; ++s) {
    for (int k = 0; k < kNumActions; ++k) sum += std::fabs(a.at(s, k) - b.at(s, k));
  }
  EXPECT_NEAR(DeltaQ(a, b), sum / 45.0, 1e-14);
}

TEST(DeltaQTest, IsAMetric) {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const QTable a = Random(6, rng), b = Random(6, rng), c = Random(6, rng);
    EXPECT_EQ(DeltaQ(a, b), DeltaQ(b, a));
    EXPECT_GT(DeltaQ(a, b), 0.0);
    EXPECT_LE(DeltaQ(a, c), DeltaQ(a, b) + DeltaQ(b, c) + 1e-12);
  }
}

TEST(MovingAverageTest, UnitWindowAndConstants) {
  const std::vector<double> x = {3, 1, 4, 1, 5};
  EXPECT_EQ(MovingAverage(x, 1), x);
  const std::vector<double> c(50, 2.5);
  const auto m = MovingAverage(c, 7);
  EXPECT_EQ(m.size(), c.size());
  for (double v : m) EXPECT_DOUBLE_EQ(v, 2.5);
  EXPECT_THROW(MovingAverage(x, 0), ParameterError);
}

TEST(MovingAverageTest, TrailingWindow) {
  const std::vector<double> x = {2, 4, 6, 8};
  const auto m = MovingAverage(x, 2);
  EXPECT_EQ(m, (std::vector<double>{2, 3, 5, 7}));
}

TEST(ConvergenceTest, Examples) {
  EXPECT_FALSE(ConvergenceEpisode(std::vector<double>(300, 1.0), 0.5).has_value());
  EXPECT_EQ(ConvergenceEpisode(std::vector<double>(300, 0.1), 0.5), 0);
}

// Linear-scan oracle: first i with series[i..i+p) all below threshold,
// where the window may run off the end of the series.
std::optional<int> ScanOracle(const std::vector<double>& x, double thr, int p) {
  const int n = static_cast<int>(x.size());
  for (int i = 0; i < n; ++i) {
    bool ok = true;
    for (int j = i; j < std::min(n, i + p); ++j) ok = ok && x[j] < thr;
    if (ok) return i;
  }
  return std::nullopt;
}

TEST(ConvergenceTest, CrossingAtHundred) {
  std::vector<double> x(400);
  for (int i = 0; i < 400; ++i) x[i] = i < 100 ? 1.0 - i * 0.001 : 0.2;
  // A brief dip before the crossing does not count.
  x[60] = 0.1;
  EXPECT_EQ(ConvergenceEpisode(x, 0.5, 50), 100);
  EXPECT_EQ(ScanOracle(x, 0.5, 50), 100);
}

TEST(ConvergenceTest, AgreesWithScanOracle) {
  Rng rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> x(120);
    for (double& v : x) v = rng.Uniform();
    const int p = 1 + rng.UniformInt(20);
    EXPECT_EQ(ConvergenceEpisode(x, 0.8, p), ScanOracle(x, 0.8, p)) << trial;
  }
}

TEST(SummarizeRunTest, SmoothsAndCountsGamma) {
  std::vector<EpisodeMetrics> eps(5);
  for (int i = 0; i < 5; ++i) {
    eps[i].episode = i;
    eps[i].steps = 10 * (i + 1);
    eps[i].cumulative_reward = i;
    eps[i].delta_q = 1.0;
  }
  eps[1].gamma_samples = {1, 3};
  eps[4].gamma_samples = {3, 13};
  SummaryOptions opt;
  opt.window = 1;
  const RunSummary s = SummarizeRun(eps, opt);
  EXPECT_EQ(s.steps, (std::vector<double>{10, 20, 30, 40, 50}));
  EXPECT_EQ(s.reward, (std::vector<double>{0, 1, 2, 3, 4}));
  ASSERT_EQ(s.gamma_histogram.size(), 14u);
  EXPECT_EQ(s.gamma_histogram[3], 2);
  EXPECT_EQ(s.gamma_histogram[13], 1);
  EXPECT_FALSE(s.convergence_episode.has_value());
  EXPECT_THROW(SummarizeRun({}, opt), PreconditionError);
}

TEST(AggregateAcrossSeedsTest, ThreeSeedToy) {
  const std::vector<std::vector<double>> runs = {{1, 4}, {2, 6}, {6, 8}};
  const SeedAggregate a = AggregateAcrossSeeds(runs);
  // Hand-computed: means 3 and 6; sample stddevs sqrt(7) and 2.
  EXPECT_DOUBLE_EQ(a.mean[0], 3.0);
  EXPECT_DOUBLE_EQ(a.mean[1], 6.0);
  EXPECT_NEAR(a.stddev[0], std::sqrt(7.0), 1e-14);
  EXPECT_NEAR(a.stddev[1], 2.0, 1e-14);
  const SeedAggregate one = AggregateAcrossSeeds(
      std::vector<std::vector<double>>{{1, 2}});
  EXPECT_TRUE(one.stddev.empty());
  EXPECT_THROW(AggregateAcrossSeeds(std::vector<std::vector<double>>{{1}, {1, 2}}),
               PreconditionError);
}

TEST(EpisodesCsvTest, Format) {
  EpisodeMetrics e;
  e.episode = 3;
  e.steps = 12;
  e.cumulative_reward = 10.5;
  e.goal_reached = true;
  e.winner = 2;
  e.gamma_samples = {1, 2};
  std::ostringstream out;
  WriteEpisodesCsv(std::vector<EpisodeMetrics>{e}, out);
  EXPECT_EQ(out.str(),
            "episode,steps,reward,delta_q,alarms,advice,malicious,done_by,"
            "winner,gamma_count,gamma_mean\n"
            "3,12,10.5,0,0,0,0,goal,2,2,1.5\n");
}

}  // namespace
}  // namespace ldpmarl
