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

// Q-value advising between neighbouring agents. An advisee asks the agents
// inside its neighbour zone for their (LDP-perturbed) Q-values of its
// current state and blends the replies into its own row.

#ifndef LDPMARL_ADVICE_H_
#define LDPMARL_ADVICE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ldpmarl/agent.h"
#include "ldpmarl/attack.h"
#include "ldpmarl/env.h"
#include "ldpmarl/privacy.h"

namespace ldpmarl {

struct AdviceRecord {
  int advisor = 0;
  StateId state = 0;
  std::vector<double> values;
  bool malicious = false;
  int episode = 0;
  int step = 0;
};

enum class RequestRule { kInverseSqrt, kConstant };

std::optional<RequestRule> ParseRequestRule(std::string_view name);
std::string_view RequestRuleName(RequestRule rule);

// 1 / sqrt(1 + visit_count).
double RequestProbability(int64_t visit_count);

struct AggregationParams {
  double weight = 0.90;
  // Chebyshev radius of the neighbour zone.
  int zone_radius = 2;
};

struct AdviceParams {
  bool enabled = true;
  AggregationParams aggregation;
  RequestRule ask_rule = RequestRule::kInverseSqrt;
  RequestRule give_rule = RequestRule::kInverseSqrt;
  double ask_constant = 1.0;   // probability under kConstant
  double give_constant = 1.0;
  int64_t ask_budget = 100000;
  int64_t give_budget = 100000;
  int64_t attacker_give_budget = 10000;

  double AskProbability(int64_t visits) const;
  double GiveProbability(int64_t visits) const;
  void Validate() const;
};

// One malicious reply, for the attack log.
struct AttackTrace {
  int attacker = 0;
  StateId state = 0;
  PoisonedVector vector;  // internal mode
  bool external = false;
};

struct AdviceRound {
  bool asked = false;
  std::vector<AdviceRecord> records;
  std::vector<AttackTrace> attacks;
};

// Everything GatherAdvice reads besides the agents themselves.
struct AdviceContext {
  const AdviceParams* advice = nullptr;
  const PrivacyParams* privacy = nullptr;
  // LDP noise on benign replies; false sends clamped raw values.
  bool privacy_enabled = true;
  // Null when no agent is compromised.
  const PoisoningAttack* attack = nullptr;
  int episode = 0;
  int step = 0;
};

// Runs one advice request of `advisee` for state `s`. The ask fires with the
// advisee's request probability if its ask budget is positive; each other
// agent within the zone then replies with its own give probability while
// both budgets last. Benign advisors reply with PerturbQVector of their row;
// compromised ones run the poisoning loop (internal mode) or have their
// benign reply tampered with on the channel (external mode). Ask draws come
// from the advisee's advice stream, reply draws from the advisor's.
AdviceRound GatherAdvice(int advisee, StateId s, const GridWorld& world,
                         std::vector<Agent>& agents, const AdviceContext& ctx);

// w * own(a) + (1 - w) * mean over records of values(a); `own` unchanged when
// there is no advice. Throws ProtocolError on a length mismatch.
std::vector<double> Aggregate(std::span<const double> own,
                              std::span<const AdviceRecord> advice,
                              double weight);

int ChebyshevDistance(Cell a, Cell b);

}  // namespace ldpmarl

#endif  // LDPMARL_ADVICE_H_
