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

// Campaign orchestration: the baseline reference run, then one arm per
// (attacker ratio, seed), then per-ratio aggregation. Output layout:
//
//   manifest
//   baseline/episodes.csv, baseline/reference_q.csv
//   ratio_<r>/seed_<s>/episodes.csv, attacks.csv, alarms.csv [, advice.csv]
//   summary/ratio_<r>.csv, convergence.csv, overview.csv, gamma_hist.csv
//   summary/failures.csv (only when an arm failed)

#ifndef LDPMARL_CAMPAIGN_H_
#define LDPMARL_CAMPAIGN_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ldpmarl/config.h"
#include "ldpmarl/metrics.h"

namespace ldpmarl {

inline constexpr std::string_view kVersion = "ldpmarl 0.1.0";

// Directory-safe label of an attacker ratio, e.g. "0.2".
std::string RatioLabel(double ratio);

struct ArmResult {
  double ratio = 0.0;
  uint64_t seed = 0;
  std::vector<int> attackers;
  bool failed = false;
  std::string error;
  RunSummary summary;
};

struct CampaignResult {
  std::vector<ArmResult> arms;  // ratio-major, seeds in config order
  int failures = 0;
};

// Resolved configuration plus derived values (noise scale, thresholds,
// attacker ids, arm root seeds) and the code version. Deterministic: no
// timestamps or host details.
ConfigMap BuildManifest(const ExperimentConfig& config);

// Inverse of BuildManifest: drops derived keys and checks the version.
ExperimentConfig ConfigFromManifest(const ConfigMap& manifest);

// Runs the baseline and writes baseline/. Returns the reference Q-table.
QTable RunBaseline(const ExperimentConfig& config,
                   const std::filesystem::path& out_dir);

// Runs one arm against `reference` and writes its directory.
ArmResult RunArm(const ExperimentConfig& config, double ratio, uint64_t seed,
                 const QTable& reference,
                 const std::filesystem::path& out_dir);

// Full campaign into `out_dir`. Arm failures are recorded and skipped;
// baseline failures propagate. Progress lines go to `progress` if non-null.
CampaignResult RunCampaign(const ExperimentConfig& config,
                           const std::filesystem::path& out_dir,
                           std::ostream* progress = nullptr);

}  // namespace ldpmarl

#endif  // LDPMARL_CAMPAIGN_H_
