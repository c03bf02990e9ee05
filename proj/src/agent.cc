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

#include "ldpmarl/agent.h"

#include <cmath>
#include <ostream>
#include <string>

#include "ldpmarl/csv.h"
#include "ldpmarl/errors.h"

namespace ldpmarl {

QTable::QTable(int num_states, int num_actions)
    : num_states_(num_states),
      num_actions_(num_actions),
      values_(static_cast<size_t>(num_states) * num_actions, 0.0) {
  if (num_states <= 0 || num_actions <= 0) {
    throw ConfigError("Q-table dimensions must be positive");
  }
}

size_t QTable::Index(StateId s, int a) const {
  if (s < 0 || s >= num_states_ || a < 0 || a >= num_actions_) {
    throw PreconditionError("Q-table index (" + std::to_string(s) + ", " +
                            std::to_string(a) + ") out of range");
  }
  return static_cast<size_t>(s) * num_actions_ + a;
}

void QTable::set(StateId s, int a, double v) {
  if (!std::isfinite(v)) throw NumericError("non-finite Q-value");
  values_[Index(s, a)] = v;
}

std::span<const double> QTable::Row(StateId s) const {
  return {values_.data() + Index(s, 0), static_cast<size_t>(num_actions_)};
}

void QTable::SetRow(StateId s, std::span<const double> row) {
  if (static_cast<int>(row.size()) != num_actions_) {
    throw ProtocolError("row length " + std::to_string(row.size()) +
                        " != action count " + std::to_string(num_actions_));
  }
  for (int a = 0; a < num_actions_; ++a) set(s, a, row[a]);
}

double QTable::MaxValue(StateId s) const { return at(s, ArgMax(s)); }

int QTable::ArgMax(StateId s) const { return ldpmarl::ArgMax(Row(s)); }

int ArgMax(std::span<const double> values) {
  int best = 0;
  for (int a = 1; a < static_cast<int>(values.size()); ++a) {
    if (values[a] > values[best]) best = a;
  }
  return best;
}

void WriteQTableCsv(const QTable& q, std::ostream& out) {
  out << "state,action,q\n";
  for (StateId s = 0; s < q.num_states(); ++s) {
    for (int a = 0; a < q.num_actions(); ++a) {
      out << s << ',' << a << ',' << FormatDouble(q.at(s, a)) << '\n';
    }
  }
}

void LearnerParams::Validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ConfigError("learner.alpha must lie in (0, 1]");
  }
  if (!(discount >= 0.0 && discount < 1.0)) {
    throw ConfigError("learner.discount must lie in [0, 1)");
  }
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw ConfigError("learner.epsilon must lie in [0, 1]");
  }
}

int SelectAction(const QTable& q, StateId s, const LearnerParams& params,
                 Rng& rng) {
  if (rng.Uniform() < params.epsilon) {
    return rng.UniformInt(q.num_actions());
  }
  return q.ArgMax(s);
}

double QUpdate(QTable& q, StateId s, int a, double reward, StateId s_next,
               bool terminal, const LearnerParams& params) {
  if (!std::isfinite(reward)) throw NumericError("non-finite reward");
  const double bootstrap = terminal ? 0.0 : q.MaxValue(s_next);
  const double target = reward + params.discount * bootstrap;
  const double updated =
      (1.0 - params.alpha) * q.at(s, a) + params.alpha * target;
  q.set(s, a, updated);
  return updated;
}

Agent::Agent(int id, int num_states, uint64_t root_seed)
    : id(id),
      q(num_states, kNumActions),
      visits(num_states, 0),
      policy_rng(DeriveSeed(root_seed, "policy", id)),
      advice_rng(DeriveSeed(root_seed, "advice", id)),
      attack_rng(DeriveSeed(root_seed, "attack", id)) {}

}  // namespace ldpmarl
