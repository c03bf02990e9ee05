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

// Experiment configuration. Files are flat `section.key = value` lines;
// `#` starts a comment. Lists are comma separated. Every key has a default,
// so an empty file is a valid medium-scale campaign.

#ifndef LDPMARL_CONFIG_H_
#define LDPMARL_CONFIG_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ldpmarl/advice.h"
#include "ldpmarl/agent.h"
#include "ldpmarl/attack.h"
#include "ldpmarl/detector.h"
#include "ldpmarl/env.h"
#include "ldpmarl/metrics.h"
#include "ldpmarl/privacy.h"

namespace ldpmarl {

using ConfigMap = std::map<std::string, std::string>;

// Parses `key = value` lines. Throws ConfigError with the line number on
// malformed input.
ConfigMap ParseConfigText(std::string_view text);
ConfigMap LoadConfigFile(const std::string& path);
// `key=value` override as given on the command line.
void ApplyOverride(ConfigMap& map, std::string_view assignment);

struct CampaignParams {
  std::vector<double> ratios = {0.0, 0.2, 0.4};
  std::vector<uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  int episodes = 5000;
  // Reference run: no attack, no LDP noise.
  int baseline_episodes = 10000;
  uint64_t baseline_seed = 1;
  bool advice_log = false;
};

struct ExperimentConfig {
  std::string scale = "medium";
  WorldSpec world;
  LearnerParams learner;
  PrivacyParams privacy;
  bool privacy_enabled = true;
  AdviceParams advice;
  AttackParams attack;
  DetectorParams detector;
  SummaryOptions metrics;
  CampaignParams campaign;

  // Defaults for `scale` with every other key at its default.
  static ExperimentConfig Defaults(std::string_view scale = "medium");
  // Resolves a key map. Throws ConfigError on unknown keys or bad values.
  static ExperimentConfig FromMap(const ConfigMap& map);

  // Every key with its resolved value; FromMap(ToMap()) reproduces *this.
  ConfigMap ToMap() const;
  void Validate() const;
};

// Writes `key = value` lines in key order.
std::string FormatConfig(const ConfigMap& map);

}  // namespace ldpmarl

#endif  // LDPMARL_CONFIG_H_
