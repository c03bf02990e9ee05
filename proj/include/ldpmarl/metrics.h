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

#ifndef LDPMARL_METRICS_H_
#define LDPMARL_METRICS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "ldpmarl/agent.h"

namespace ldpmarl {

struct EpisodeMetrics {
  int episode = 0;
  int steps = 0;                   // steps of the first agent to reach the goal
  double cumulative_reward = 0.0;  // that agent's episode return
  double delta_q = 0.0;            // mean |Q - Q*| over agents and entries
  int64_t alarms = 0;
  int64_t advice_records = 0;
  int64_t malicious_records = 0;
  bool goal_reached = false;
  int winner = -1;                 // -1 when the step limit ended the episode
  std::vector<int> gamma_samples;  // accepted poisoning degrees
};

// Mean over all (s, a) of |current(s,a) - reference(s,a)|. Throws
// PreconditionError on a dimension mismatch.
double DeltaQ(const QTable& current, const QTable& reference);

// Trailing moving average: out[i] is the mean of x[max(0, i-window+1) .. i].
std::vector<double> MovingAverage(std::span<const double> x, int window);

// First index i at which series[i..i+persistence) (clipped to the end) lies
// strictly below `threshold`, or nullopt.
std::optional<int> ConvergenceEpisode(std::span<const double> series,
                                      double threshold, int persistence = 50);

struct SummaryOptions {
  int window = 100;
  double convergence_threshold = 0.5;
  int persistence = 50;
};

struct RunSummary {
  std::vector<double> steps;   // smoothed Pi
  std::vector<double> reward;  // smoothed Phi
  std::vector<double> delta_q;  // smoothed Delta Q
  std::optional<int> convergence_episode;
  // gamma_histogram[g] = number of accepted vectors at poisoning degree g.
  std::vector<int64_t> gamma_histogram;
};

RunSummary SummarizeRun(std::span<const EpisodeMetrics> episodes,
                        const SummaryOptions& options);

// Per-episode mean and sample standard deviation across seeds of equally
// long series. stddev is empty for a single series.
struct SeedAggregate {
  std::vector<double> mean;
  std::vector<double> stddev;
};
SeedAggregate AggregateAcrossSeeds(
    std::span<const std::vector<double>> per_seed);

// Header and rows of episodes.csv.
void WriteEpisodesCsv(std::span<const EpisodeMetrics> episodes,
                      std::ostream& out);

}  // namespace ldpmarl

#endif  // LDPMARL_METRICS_H_
