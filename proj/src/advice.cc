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

#include "ldpmarl/advice.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "ldpmarl/errors.h"

namespace ldpmarl {

std::optional<RequestRule> ParseRequestRule(std::string_view name) {
  if (name == "inverse_sqrt") return RequestRule::kInverseSqrt;
  if (name == "constant") return RequestRule::kConstant;
  return std::nullopt;
}

std::string_view RequestRuleName(RequestRule rule) {
  return rule == RequestRule::kInverseSqrt ? "inverse_sqrt" : "constant";
}

double RequestProbability(int64_t visit_count) {
  if (visit_count < 0) throw PreconditionError("negative visit count");
  return 1.0 / std::sqrt(1.0 + static_cast<double>(visit_count));
}

double AdviceParams::AskProbability(int64_t visits) const {
  return ask_rule == RequestRule::kConstant ? ask_constant
                                            : RequestProbability(visits);
}

double AdviceParams::GiveProbability(int64_t visits) const {
  return give_rule == RequestRule::kConstant ? give_constant
                                             : RequestProbability(visits);
}

void AdviceParams::Validate() const {
  if (!(aggregation.weight >= 0.0 && aggregation.weight <= 1.0)) {
    throw ConfigError("advice.weight must lie in [0, 1]");
  }
  if (aggregation.zone_radius < 0) {
    throw ConfigError("advice.zone_radius must be >= 0");
  }
  for (double p : {ask_constant, give_constant}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ConfigError("advice constants must be probabilities");
    }
  }
  if (ask_budget < 0 || give_budget < 0 || attacker_give_budget < 0) {
    throw ConfigError("advice budgets must be >= 0");
  }
}

int ChebyshevDistance(Cell a, Cell b) {
  return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

AdviceRound GatherAdvice(int advisee, StateId s, const GridWorld& world,
                         std::vector<Agent>& agents, const AdviceContext& ctx) {
  AdviceRound round;
  Agent& asker = agents.at(advisee);
  if (asker.budget.remaining_ask <= 0) return round;
  const AdviceParams& params = *ctx.advice;
  if (!asker.advice_rng.Bernoulli(params.AskProbability(asker.visits[s]))) {
    return round;
  }
  round.asked = true;
  const Cell here = world.agent_position(advisee);
  const int radius = params.aggregation.zone_radius;

  for (Agent& advisor : agents) {
    if (advisor.id == advisee) continue;
    if (asker.budget.remaining_ask <= 0) break;
    if (ChebyshevDistance(here, world.agent_position(advisor.id)) > radius) {
      continue;
    }
    if (advisor.budget.remaining_give <= 0) continue;
    if (!advisor.advice_rng.Bernoulli(
            params.GiveProbability(advisor.visits[s]))) {
      continue;
    }
    --advisor.budget.remaining_give;
    --asker.budget.remaining_ask;

    AdviceRecord record;
    record.advisor = advisor.id;
    record.state = s;
    record.episode = ctx.episode;
    record.step = ctx.step;
    const std::span<const double> row = advisor.q.Row(s);
    const bool compromised = advisor.compromised && ctx.attack != nullptr;

    if (compromised &&
        ctx.attack->params().mode == AttackMode::kInternal) {
      // The poisoned vector replaces the advisor's LDP output entirely.
      AttackTrace trace;
      trace.attacker = advisor.id;
      trace.state = s;
      trace.vector = ctx.attack->Advise(row, asker.q.Row(s), advisor.attack_rng);
      record.values = trace.vector.values;
      record.malicious = true;
      round.attacks.push_back(std::move(trace));
    } else {
      if (ctx.privacy_enabled) {
        record.values = PerturbQVector(row, *ctx.privacy, advisor.advice_rng);
      } else {
        record.values.assign(row.begin(), row.end());
        for (double& v : record.values) {
          v = std::clamp(v, ctx.privacy->lower, ctx.privacy->upper);
        }
      }
      if (compromised) {
        const AdversarialProfile& prof = ctx.attack->external_profile();
        record.values =
            ctx.attack->ExternalInject(record.values, prof, advisor.attack_rng);
        record.malicious = true;
        AttackTrace trace;
        trace.attacker = advisor.id;
        trace.state = s;
        trace.external = true;
        trace.vector.values = record.values;
        trace.vector.mu_star = prof.mu_star;
        trace.vector.c = prof.c;
        trace.vector.gamma = static_cast<int>(std::lround(prof.gamma));
        trace.vector.accepted_by = AcceptedBy::kTauGammaCap;
        round.attacks.push_back(std::move(trace));
      }
    }
    round.records.push_back(std::move(record));
  }
  return round;
}

std::vector<double> Aggregate(std::span<const double> own,
                              std::span<const AdviceRecord> advice,
                              double weight) {
  std::vector<double> out(own.begin(), own.end());
  if (advice.empty()) return out;
  std::vector<double> mean(own.size(), 0.0);
  for (const AdviceRecord& record : advice) {
    if (record.values.size() != own.size()) {
      throw ProtocolError("advice vector length " +
                          std::to_string(record.values.size()) +
                          " != own length " + std::to_string(own.size()));
    }
    for (size_t a = 0; a < own.size(); ++a) mean[a] += record.values[a];
  }
  const double k = static_cast<double>(advice.size());
  for (size_t a = 0; a < own.size(); ++a) {
    out[a] = weight * own[a] + (1.0 - weight) * (mean[a] / k);
  }
  return out;
}

}  // namespace ldpmarl
