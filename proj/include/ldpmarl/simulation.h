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

// One arm of an experiment: a world, its agents and the attack/detector
// state, stepped episode by episode.

#ifndef LDPMARL_SIMULATION_H_
#define LDPMARL_SIMULATION_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "ldpmarl/advice.h"
#include "ldpmarl/agent.h"
#include "ldpmarl/attack.h"
#include "ldpmarl/config.h"
#include "ldpmarl/detector.h"
#include "ldpmarl/env.h"
#include "ldpmarl/metrics.h"
#include "ldpmarl/rng.h"

namespace ldpmarl {

// Root seed of the arm for `seed`. It does not depend on the attacker
// ratio, so arms that differ only in ratio share every benign stream.
uint64_t ArmRootSeed(uint64_t seed);

// Optional CSV sinks. Headers are written when the simulation is built.
struct RunLogs {
  std::ostream* attacks = nullptr;
  std::ostream* alarms = nullptr;
  std::ostream* advice = nullptr;
};

class Simulation {
 public:
  // `config.attack.attacker_ratio` selects the compromised agents. ΔQ is
  // measured against `reference` when given and reported as 0 otherwise.
  Simulation(const ExperimentConfig& config, uint64_t seed,
             std::optional<QTable> reference = std::nullopt,
             RunLogs logs = {});

  // Plays one episode: every agent, in id order, per step gathers advice,
  // screens it, blends it into its row, acts epsilon-greedily and learns;
  // obstacles move once all agents have acted. Module errors are rethrown
  // with the episode index prepended.
  EpisodeMetrics RunEpisode();

  // Runs `episodes` episodes and returns their metrics.
  std::vector<EpisodeMetrics> Run(int episodes);

  const GridWorld& world() const { return world_; }
  const std::vector<Agent>& agents() const { return agents_; }
  const std::vector<int>& attacker_ids() const { return attacker_ids_; }
  int episodes_played() const { return episode_; }
  uint64_t root_seed() const { return root_seed_; }

 private:
  EpisodeMetrics PlayEpisode();

  ExperimentConfig config_;
  uint64_t root_seed_;
  Rng layout_rng_;
  Rng env_rng_;
  GridWorld world_;
  std::vector<Agent> agents_;
  std::vector<int> attacker_ids_;
  std::unique_ptr<PoisoningAttack> attack_;
  std::vector<ReferenceTracker> trackers_;
  std::optional<QTable> reference_;
  RunLogs logs_;
  int episode_ = 0;
};

// Elementwise mean of the agents' Q-tables.
QTable MeanQTable(const std::vector<Agent>& agents);

// Configuration of the reference run: no attackers, no LDP noise, the
// baseline episode count.
ExperimentConfig BaselineConfig(const ExperimentConfig& config);

}  // namespace ldpmarl

#endif  // LDPMARL_SIMULATION_H_
