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

#include <algorithm>
#include <cmath>
#include <ostream>

#include "ldpmarl/csv.h"
#include "ldpmarl/errors.h"

namespace ldpmarl {

double DeltaQ(const QTable& current, const QTable& reference) {
  if (current.num_states() != reference.num_states() ||
      current.num_actions() != reference.num_actions()) {
    throw PreconditionError("delta_q needs tables of equal dimensions");
  }
  const auto& a = current.values();
  const auto& b = reference.values();
  if (a.empty()) return 0.0;
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) sum += std::fabs(a[i] - b[i]);
  return sum / static_cast<double>(a.size());
}

std::vector<double> MovingAverage(std::span<const double> x, int window) {
  if (window < 1) throw ParameterError("smoothing window must be >= 1");
  std::vector<double> out(x.size());
  const size_t w = static_cast<size_t>(window);
  for (size_t i = 0; i < x.size(); ++i) {
    const size_t begin = i + 1 >= w ? i + 1 - w : 0;
    double sum = 0.0;
    for (size_t j = begin; j <= i; ++j) sum += x[j];
    out[i] = sum / static_cast<double>(i - begin + 1);
  }
  return out;
}

std::optional<int> ConvergenceEpisode(std::span<const double> series,
                                      double threshold, int persistence) {
  if (persistence < 1) persistence = 1;
  const int n = static_cast<int>(series.size());
  // Scan backwards tracking the current run of below-threshold values.
  std::optional<int> found;
  int run = 0;
  for (int i = n - 1; i >= 0; --i) {
    run = series[i] < threshold ? run + 1 : 0;
    if (run >= std::min(persistence, n - i)) found = i;
  }
  return found;
}

RunSummary SummarizeRun(std::span<const EpisodeMetrics> episodes,
                        const SummaryOptions& options) {
  if (episodes.empty()) throw PreconditionError("no episodes to summarize");
  std::vector<double> steps, reward, dq;
  RunSummary summary;
  for (const EpisodeMetrics& e : episodes) {
    steps.push_back(e.steps);
    reward.push_back(e.cumulative_reward);
    dq.push_back(e.delta_q);
    for (int g : e.gamma_samples) {
      if (g >= static_cast<int>(summary.gamma_histogram.size())) {
        summary.gamma_histogram.resize(g + 1, 0);
      }
      ++summary.gamma_histogram[g];
    }
  }
  summary.steps = MovingAverage(steps, options.window);
  summary.reward = MovingAverage(reward, options.window);
  summary.delta_q = MovingAverage(dq, options.window);
  summary.convergence_episode = ConvergenceEpisode(
      summary.delta_q, options.convergence_threshold, options.persistence);
  return summary;
}

SeedAggregate AggregateAcrossSeeds(
    std::span<const std::vector<double>> per_seed) {
  SeedAggregate out;
  if (per_seed.empty()) return out;
  const size_t len = per_seed.front().size();
  for (const auto& s : per_seed) {
    if (s.size() != len) throw PreconditionError("seed series differ in length");
  }
  const double k = static_cast<double>(per_seed.size());
  out.mean.assign(len, 0.0);
  for (const auto& s : per_seed) {
    for (size_t i = 0; i < len; ++i) out.mean[i] += s[i];
  }
  for (double& m : out.mean) m /= k;
  if (per_seed.size() < 2) return out;
  out.stddev.assign(len, 0.0);
  for (const auto& s : per_seed) {
    for (size_t i = 0; i < len; ++i) {
      const double d = s[i] - out.mean[i];
      out.stddev[i] += d * d;
    }
  }
  for (double& v : out.stddev) v = std::sqrt(v / (k - 1.0));
  return out;
}

void WriteEpisodesCsv(std::span<const EpisodeMetrics> episodes,
                      std::ostream& out) {
  out << "episode,steps,reward,delta_q,alarms,advice,malicious,done_by,winner,"
         "gamma_count,gamma_mean\n";
  for (const EpisodeMetrics& e : episodes) {
    double gamma_mean = 0.0;
    for (int g : e.gamma_samples) gamma_mean += g;
    if (!e.gamma_samples.empty()) gamma_mean /= e.gamma_samples.size();
    out << e.episode << ',' << e.steps << ',' << FormatDouble(e.cumulative_reward)
        << ',' << FormatDouble(e.delta_q) << ',' << e.alarms << ','
        << e.advice_records << ',' << e.malicious_records << ','
        << (e.goal_reached ? "goal" : "limit") << ',' << e.winner << ','
        << e.gamma_samples.size() << ',' << FormatDouble(gamma_mean) << '\n';
  }
}

}  // namespace ldpmarl
