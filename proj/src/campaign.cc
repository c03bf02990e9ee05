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

#include "ldpmarl/campaign.h"

#include <fstream>
#include <map>
#include <ostream>
#include <string>
#include <utility>

#include "ldpmarl/csv.h"
#include "ldpmarl/errors.h"
#include "ldpmarl/simulation.h"

namespace ldpmarl {
namespace fs = std::filesystem;
namespace {

std::ofstream OpenOut(const fs::path& path) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::string JoinInts(const std::vector<int>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::vector<int> AttackersFor(const ExperimentConfig& config, double ratio,
                              uint64_t seed) {
  Rng roles(DeriveSeed(ArmRootSeed(seed), "roles"));
  return SelectAttackers(config.world.num_agents, ratio, roles);
}

std::string OptionalIndex(const std::optional<int>& v) {
  return v ? std::to_string(*v) : std::string();
}

double Last(const std::vector<double>& v) { return v.empty() ? 0.0 : v.back(); }

void WriteRatioSummary(const std::vector<const ArmResult*>& arms,
                       const fs::path& path) {
  std::vector<std::vector<double>> steps, reward, dq;
  for (const ArmResult* a : arms) {
    steps.push_back(a->summary.steps);
    reward.push_back(a->summary.reward);
    dq.push_back(a->summary.delta_q);
  }
  const SeedAggregate s = AggregateAcrossSeeds(steps);
  const SeedAggregate r = AggregateAcrossSeeds(reward);
  const SeedAggregate d = AggregateAcrossSeeds(dq);
  const bool with_std = arms.size() > 1;
  std::ofstream out = OpenOut(path);
  out << "episode,steps_mean";
  if (with_std) out << ",steps_std";
  out << ",reward_mean";
  if (with_std) out << ",reward_std";
  out << ",delta_q_mean";
  if (with_std) out << ",delta_q_std";
  out << '\n';
  for (size_t i = 0; i < s.mean.size(); ++i) {
    out << i << ',' << FormatDouble(s.mean[i]);
    if (with_std) out << ',' << FormatDouble(s.stddev[i]);
    out << ',' << FormatDouble(r.mean[i]);
    if (with_std) out << ',' << FormatDouble(r.stddev[i]);
    out << ',' << FormatDouble(d.mean[i]);
    if (with_std) out << ',' << FormatDouble(d.stddev[i]);
    out << '\n';
  }
}

}  // namespace

std::string RatioLabel(double ratio) { return FormatDouble(ratio); }

ConfigMap BuildManifest(const ExperimentConfig& config) {
  ConfigMap m = config.ToMap();
  m["version"] = std::string(kVersion);
  m["derived.noise_scale"] = FormatDouble(config.privacy.Scale());
  m["derived.sensitivity"] = FormatDouble(config.privacy.Sensitivity());
  m["derived.tau_prime"] = FormatDouble(config.detector.TauPrime());
  m["derived.poisoning_window"] =
      FormatDouble(config.detector.PoisoningWindow());
  m["derived.baseline_root_seed"] =
      std::to_string(ArmRootSeed(config.campaign.baseline_seed));
  for (uint64_t seed : config.campaign.seeds) {
    const std::string s = std::to_string(seed);
    m["derived.root_seed." + s] = std::to_string(ArmRootSeed(seed));
    for (double ratio : config.campaign.ratios) {
      m["derived.attackers." + RatioLabel(ratio) + "." + s] =
          JoinInts(AttackersFor(config, ratio, seed));
    }
  }
  return m;
}

ExperimentConfig ConfigFromManifest(const ConfigMap& manifest) {
  ConfigMap keys;
  for (const auto& [k, v] : manifest) {
    if (k == "version") {
      if (v != kVersion) {
        throw ConfigError("manifest version '" + v + "' does not match '" +
                          std::string(kVersion) + "'");
      }
      continue;
    }
    if (k.rfind("derived.", 0) == 0) continue;
    keys[k] = v;
  }
  return ExperimentConfig::FromMap(keys);
}

QTable RunBaseline(const ExperimentConfig& config, const fs::path& out_dir) {
  const ExperimentConfig base = BaselineConfig(config);
  Simulation sim(base, base.campaign.baseline_seed);
  const std::vector<EpisodeMetrics> episodes = sim.Run(base.campaign.episodes);
  const QTable reference = MeanQTable(sim.agents());
  {
    std::ofstream out = OpenOut(out_dir / "baseline" / "episodes.csv");
    WriteEpisodesCsv(episodes, out);
  }
  {
    std::ofstream out = OpenOut(out_dir / "baseline" / "reference_q.csv");
    WriteQTableCsv(reference, out);
  }
  return reference;
}

ArmResult RunArm(const ExperimentConfig& config, double ratio, uint64_t seed,
                 const QTable& reference, const fs::path& out_dir) {
  ExperimentConfig arm = config;
  arm.attack.attacker_ratio = ratio;
  ArmResult result;
  result.ratio = ratio;
  result.seed = seed;
  const fs::path dir = out_dir / ("ratio_" + RatioLabel(ratio)) /
                       ("seed_" + std::to_string(seed));
  try {
    std::ofstream attacks = OpenOut(dir / "attacks.csv");
    std::ofstream alarms = OpenOut(dir / "alarms.csv");
    std::ofstream advice;
    RunLogs logs;
    logs.attacks = &attacks;
    logs.alarms = &alarms;
    if (arm.campaign.advice_log) {
      advice = OpenOut(dir / "advice.csv");
      logs.advice = &advice;
    }
    Simulation sim(arm, seed, reference, logs);
    result.attackers = sim.attacker_ids();
    const std::vector<EpisodeMetrics> episodes = sim.Run(arm.campaign.episodes);
    std::ofstream out = OpenOut(dir / "episodes.csv");
    WriteEpisodesCsv(episodes, out);
    result.summary = SummarizeRun(episodes, arm.metrics);
  } catch (const std::exception& e) {
    result.failed = true;
    result.error = e.what();
  }
  return result;
}

CampaignResult RunCampaign(const ExperimentConfig& config,
                           const fs::path& out_dir, std::ostream* progress) {
  config.Validate();
  fs::create_directories(out_dir);
  {
    std::ofstream out = OpenOut(out_dir / "manifest");
    out << FormatConfig(BuildManifest(config));
  }
  if (progress) *progress << "baseline: " << config.campaign.baseline_episodes
                          << " episodes\n";
  const QTable reference = RunBaseline(config, out_dir);

  CampaignResult result;
  for (double ratio : config.campaign.ratios) {
    for (uint64_t seed : config.campaign.seeds) {
      if (progress) {
        *progress << "ratio " << RatioLabel(ratio) << " seed " << seed << '\n';
      }
      ArmResult arm = RunArm(config, ratio, seed, reference, out_dir);
      if (arm.failed) {
        ++result.failures;
        if (progress) *progress << "  failed: " << arm.error << '\n';
      }
      result.arms.push_back(std::move(arm));
    }
  }

  const fs::path summary_dir = out_dir / "summary";
  std::ofstream convergence = OpenOut(summary_dir / "convergence.csv");
  convergence << "ratio,seed,attackers,convergence_episode,final_steps,"
                 "final_reward,final_delta_q\n";
  std::ofstream overview = OpenOut(summary_dir / "overview.csv");
  overview << "ratio,attackers,seeds,final_steps,final_reward,final_delta_q,"
              "convergence_episode\n";
  std::ofstream hist = OpenOut(summary_dir / "gamma_hist.csv");
  hist << "ratio,gamma,count\n";

  for (double ratio : config.campaign.ratios) {
    std::vector<const ArmResult*> ok;
    std::map<int, int64_t> gamma_counts;
    for (const ArmResult& arm : result.arms) {
      if (arm.ratio != ratio || arm.failed) continue;
      ok.push_back(&arm);
      convergence << RatioLabel(ratio) << ',' << arm.seed << ','
                  << arm.attackers.size() << ','
                  << OptionalIndex(arm.summary.convergence_episode) << ','
                  << FormatDouble(Last(arm.summary.steps)) << ','
                  << FormatDouble(Last(arm.summary.reward)) << ','
                  << FormatDouble(Last(arm.summary.delta_q)) << '\n';
      const auto& h = arm.summary.gamma_histogram;
      for (size_t g = 0; g < h.size(); ++g) {
        if (h[g] > 0) gamma_counts[static_cast<int>(g)] += h[g];
      }
    }
    for (const auto& [g, count] : gamma_counts) {
      hist << RatioLabel(ratio) << ',' << g << ',' << count << '\n';
    }
    if (ok.empty()) continue;
    WriteRatioSummary(ok, summary_dir / ("ratio_" + RatioLabel(ratio) + ".csv"));

    std::vector<std::vector<double>> dq;
    double steps = 0.0, reward = 0.0, delta = 0.0;
    for (const ArmResult* a : ok) {
      dq.push_back(a->summary.delta_q);
      steps += Last(a->summary.steps);
      reward += Last(a->summary.reward);
      delta += Last(a->summary.delta_q);
    }
    const double k = static_cast<double>(ok.size());
    const SeedAggregate mean_dq = AggregateAcrossSeeds(dq);
    const auto conv =
        ConvergenceEpisode(mean_dq.mean, config.metrics.convergence_threshold,
                           config.metrics.persistence);
    overview << RatioLabel(ratio) << ','
             << AttackerCount(config.world.num_agents, ratio) << ','
             << ok.size() << ',' << FormatDouble(steps / k) << ','
             << FormatDouble(reward / k) << ',' << FormatDouble(delta / k)
             << ',' << OptionalIndex(conv) << '\n';
  }

  if (result.failures > 0) {
    std::ofstream failures = OpenOut(summary_dir / "failures.csv");
    failures << "ratio,seed,error\n";
    for (const ArmResult& arm : result.arms) {
      if (!arm.failed) continue;
      std::string msg = arm.error;
      for (char& c : msg) {
        if (c == ',' || c == '\n') c = ';';
      }
      failures << RatioLabel(arm.ratio) << ',' << arm.seed << ',' << msg
               << '\n';
    }
  }
  return result;
}

}  // namespace ldpmarl
