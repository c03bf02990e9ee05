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

#ifndef LDPMARL_AGENT_H_
#define LDPMARL_AGENT_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "ldpmarl/env.h"
#include "ldpmarl/rng.h"

namespace ldpmarl {

// Dense state x action table of Q-values, zero-initialized.
class QTable {
 public:
  QTable() = default;
  QTable(int num_states, int num_actions);

  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }

  double at(StateId s, int a) const { return values_[Index(s, a)]; }
  void set(StateId s, int a, double v);

  std::span<const double> Row(StateId s) const;
  // Overwrites the row for `s`; throws ProtocolError on a length mismatch.
  void SetRow(StateId s, std::span<const double> row);

  double MaxValue(StateId s) const;
  // Greedy action; ties resolve to the lowest action index.
  int ArgMax(StateId s) const;

  const std::vector<double>& values() const { return values_; }

  friend bool operator==(const QTable&, const QTable&) = default;

 private:
  size_t Index(StateId s, int a) const;

  int num_states_ = 0;
  int num_actions_ = 0;
  std::vector<double> values_;
};

// Index of the largest entry; ties resolve to the lowest index.
int ArgMax(std::span<const double> values);

// Writes `state,action,q` rows (with header) in row-major order.
void WriteQTableCsv(const QTable& q, std::ostream& out);

struct LearnerParams {
  double alpha = 0.10;     // learning rate, (0, 1]
  double discount = 0.80;  // discount factor, [0, 1)
  double epsilon = 0.08;   // exploration probability, [0, 1]

  void Validate() const;
};

// Epsilon-greedy choice. One uniform is always drawn for the exploration
// test, and one more only when exploring.
int SelectAction(const QTable& q, StateId s, const LearnerParams& params,
                 Rng& rng);

// Q(s,a) <- (1 - alpha) Q(s,a) + alpha [r + discount * max_a' Q(s',a')],
// with the bootstrap term dropped when `terminal`. Returns the new value.
// Throws NumericError on a non-finite reward.
double QUpdate(QTable& q, StateId s, int a, double reward, StateId s_next,
               bool terminal, const LearnerParams& params);

// Number of advice exchanges an agent may still request or give; one unit
// per exchanged state vector.
struct AdviceBudget {
  int64_t remaining_ask = 100000;
  int64_t remaining_give = 100000;
};

// Everything one simulated agent owns. Streams are private to the agent so
// that the choices of one agent never shift another agent's draws.
struct Agent {
  Agent(int id, int num_states, uint64_t root_seed);

  int id;
  QTable q;
  std::vector<int64_t> visits;  // visits per state, advisee and advisor side
  AdviceBudget budget;
  bool compromised = false;
  Rng policy_rng;  // epsilon-greedy
  Rng advice_rng;  // ask/give decisions and LDP noise
  Rng attack_rng;  // adversarial noise, used only when compromised
};

}  // namespace ldpmarl

#endif  // LDPMARL_AGENT_H_
