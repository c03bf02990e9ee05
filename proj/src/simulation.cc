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

#include <algorithm>
#include <ostream>
#include <string>
#include <utility>

#include "ldpmarl/csv.h"
#include "ldpmarl/errors.h"

namespace ldpmarl {
namespace {

// Rethrows `e` as the same error category with `prefix` prepended.
[[noreturn]] void RethrowWithPrefix(const std::string& prefix) {
  try {
    throw;
  } catch (const ConfigError& e) {
    throw ConfigError(prefix + e.what());
  } catch (const ParameterError& e) {
    throw ParameterError(prefix + e.what());
  } catch (const PreconditionError& e) {
    throw PreconditionError(prefix + e.what());
  } catch (const NumericError& e) {
    throw NumericError(prefix + e.what());
  } catch (const ProtocolError& e) {
    throw ProtocolError(prefix + e.what());
  } catch (const std::exception& e) {
    throw std::runtime_error(prefix + e.what());
  }
}

}  // namespace

uint64_t ArmRootSeed(uint64_t seed) { return DeriveSeed(seed, "arm"); }

Simulation::Simulation(const ExperimentConfig& config, uint64_t seed,
                       std::optional<QTable> reference, RunLogs logs)
    : config_(config),
      root_seed_(ArmRootSeed(seed)),
      layout_rng_(DeriveSeed(config.world.layout_seed, "layout")),
      env_rng_(DeriveSeed(root_seed_, "env")),
      world_(config.world, layout_rng_),
      reference_(std::move(reference)),
      logs_(logs) {
  config_.Validate();
  const int n = world_.num_agents();
  const int states = world_.num_states();
  if (reference_ && (reference_->num_states() != states ||
                     reference_->num_actions() != kNumActions)) {
    throw PreconditionError("reference Q-table does not match the world");
  }
  agents_.reserve(n);
  for (int i = 0; i < n; ++i) agents_.emplace_back(i, states, root_seed_);
  for (Agent& a : agents_) {
    a.budget.remaining_ask = config_.advice.ask_budget;
    a.budget.remaining_give = config_.advice.give_budget;
  }

  Rng roles(DeriveSeed(root_seed_, "roles"));
  attacker_ids_ = SelectAttackers(n, config_.attack.attacker_ratio, roles);
  for (int id : attacker_ids_) {
    agents_[id].compromised = true;
    agents_[id].budget.remaining_give = config_.advice.attacker_give_budget;
  }
  if (!attacker_ids_.empty()) {
    attack_ = std::make_unique<PoisoningAttack>(config_.attack,
                                                config_.privacy);
  }
  if (config_.detector.enabled) {
    trackers_.assign(n, ReferenceTracker(states, kNumActions));
  }

  if (logs_.attacks) {
    *logs_.attacks << "episode,step,attacker,advisee,state,gamma,mu_star,c,"
                      "accepted_by,fallback,external\n";
  }
  if (logs_.alarms) {
    *logs_.alarms << "episode,step,advisee,advisor,state,max_deviation,"
                     "threshold,malicious\n";
  }
  if (logs_.advice) {
    *logs_.advice << "episode,step,advisee,advisor,state,action,value,"
                     "malicious\n";
  }
}

EpisodeMetrics Simulation::RunEpisode() {
  try {
    return PlayEpisode();
  } catch (...) {
    RethrowWithPrefix("episode " + std::to_string(episode_) + ": ");
  }
}

std::vector<EpisodeMetrics> Simulation::Run(int episodes) {
  std::vector<EpisodeMetrics> out;
  out.reserve(std::max(episodes, 0));
  for (int e = 0; e < episodes; ++e) out.push_back(RunEpisode());
  return out;
}

EpisodeMetrics Simulation::PlayEpisode() {
  EpisodeMetrics m;
  m.episode = episode_;
  const int n = world_.num_agents();
  std::vector<double> returns(n, 0.0);
  world_.Reset(env_rng_);

  AdviceContext ctx;
  ctx.advice = &config_.advice;
  ctx.privacy = &config_.privacy;
  ctx.privacy_enabled = config_.privacy_enabled;
  ctx.attack = attack_.get();
  ctx.episode = episode_;
  const double weight = config_.advice.aggregation.weight;

  while (!world_.done()) {
    const int step = world_.steps();
    ctx.step = step;
    for (int i = 0; i < n && !world_.goal_reached(); ++i) {
      Agent& agent = agents_[i];
      const StateId s = world_.EncodeState(i);

      if (config_.advice.enabled) {
        AdviceRound round = GatherAdvice(i, s, world_, agents_, ctx);
        for (const AttackTrace& t : round.attacks) {
          m.gamma_samples.push_back(t.vector.gamma);
          if (logs_.attacks) {
            *logs_.attacks << episode_ << ',' << step << ',' << t.attacker
                           << ',' << i << ',' << s << ',' << t.vector.gamma
                           << ',' << FormatDouble(t.vector.mu_star) << ','
                           << FormatDouble(t.vector.c) << ','
                           << AcceptedByName(t.vector.accepted_by) << ','
                           << (t.vector.used_fallback ? 1 : 0) << ','
                           << (t.external ? 1 : 0) << '\n';
          }
        }
        std::vector<AdviceRecord> accepted;
        accepted.reserve(round.records.size());
        for (AdviceRecord& r : round.records) {
          ++m.advice_records;
          if (r.malicious) ++m.malicious_records;
          if (logs_.advice) {
            for (size_t a = 0; a < r.values.size(); ++a) {
              *logs_.advice << episode_ << ',' << step << ',' << i << ','
                            << r.advisor << ',' << s << ','
                            << ActionName(static_cast<Action>(a)) << ','
                            << FormatDouble(r.values[a]) << ','
                            << (r.malicious ? 1 : 0) << '\n';
            }
          }
          if (config_.detector.enabled) {
            const CheckResult check = Check(r, trackers_[i], config_.detector,
                                            config_.privacy_enabled);
            if (check.verdict == Verdict::kAlarm) {
              ++m.alarms;
              if (logs_.alarms) {
                *logs_.alarms << episode_ << ',' << step << ',' << i << ','
                              << r.advisor << ',' << s << ','
                              << FormatDouble(check.max_deviation) << ','
                              << FormatDouble(check.threshold) << ','
                              << (r.malicious ? 1 : 0) << '\n';
              }
              if (config_.detector.blocking) continue;
            }
          }
          accepted.push_back(std::move(r));
        }
        if (!accepted.empty()) {
          agent.q.SetRow(s, Aggregate(agent.q.Row(s), accepted, weight));
        }
      }

      const int a = SelectAction(agent.q, s, config_.learner,
                                 agent.policy_rng);
      const StepResult result = world_.Step(i, static_cast<Action>(a));
      const StateId next = world_.EncodeCell(result.next);
      QUpdate(agent.q, s, a, result.reward, next, result.done,
              config_.learner);
      returns[i] += result.reward;
      ++agent.visits[s];
    }
    if (world_.goal_reached()) break;
    world_.Tick(env_rng_);
  }

  if (const auto w = world_.winner()) {
    m.goal_reached = true;
    m.winner = *w;
    m.steps = world_.steps() + 1;
    m.cumulative_reward = returns[*w];
  } else {
    m.steps = world_.steps();
    m.cumulative_reward = *std::max_element(returns.begin(), returns.end());
  }
  if (reference_) {
    double sum = 0.0;
    for (const Agent& agent : agents_) sum += DeltaQ(agent.q, *reference_);
    m.delta_q = sum / n;
  }
  ++episode_;
  return m;
}

QTable MeanQTable(const std::vector<Agent>& agents) {
  if (agents.empty()) throw PreconditionError("no agents to average");
  const QTable& first = agents.front().q;
  QTable out(first.num_states(), first.num_actions());
  const double k = static_cast<double>(agents.size());
  for (StateId s = 0; s < first.num_states(); ++s) {
    for (int a = 0; a < first.num_actions(); ++a) {
      double sum = 0.0;
      for (const Agent& agent : agents) sum += agent.q.at(s, a);
      out.set(s, a, sum / k);
    }
  }
  return out;
}

ExperimentConfig BaselineConfig(const ExperimentConfig& config) {
  ExperimentConfig b = config;
  b.attack.attacker_ratio = 0.0;
  b.privacy_enabled = false;
  b.campaign.episodes = config.campaign.baseline_episodes;
  return b;
}

}  // namespace ldpmarl
