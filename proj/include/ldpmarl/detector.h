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

// Threshold anomaly detector on received advice. Without LDP an advisee
// flags any Q-value farther than tau from its reference Q0(s,a). With LDP the
// threshold widens to tau' = tau * kappa so benign noise is not flagged,
// which opens a poisoning window of |tau (1 - kappa)| for an attacker.

#ifndef LDPMARL_DETECTOR_H_
#define LDPMARL_DETECTOR_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "ldpmarl/advice.h"
#include "ldpmarl/attack.h"
#include "ldpmarl/privacy.h"
#include "ldpmarl/rng.h"

namespace ldpmarl {

struct DetectorParams {
  double tau = 100.0;
  double kappa = 1000.0;
  bool enabled = true;
  // Drop alarmed records instead of only logging them.
  bool blocking = false;

  double TauPrime() const { return tau * kappa; }
  double PoisoningWindow() const;
  double Threshold(bool dp_enabled) const {
    return dp_enabled ? TauPrime() : tau;
  }
  void Validate() const;
};

// Per (state, action) reference Q0: running mean of accepted values,
// starting at 0.
class ReferenceTracker {
 public:
  ReferenceTracker(int num_states, int num_actions);

  double q0(StateId s, int a) const;
  int64_t count(StateId s, int a) const;
  void Observe(StateId s, int a, double value);
  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }

 private:
  int num_states_;
  int num_actions_;
  std::vector<double> mean_;
  std::vector<int64_t> count_;
};

enum class Verdict { kAccept, kAlarm };
std::string_view VerdictName(Verdict verdict);

struct CheckResult {
  Verdict verdict = Verdict::kAccept;
  double max_deviation = 0.0;
  double threshold = 0.0;
};

// Alarms iff some action deviates from Q0 by more than the active threshold
// (tau, or tau' when dp_enabled). Accepted records update the tracker.
CheckResult Check(const AdviceRecord& record, ReferenceTracker& tracker,
                  const DetectorParams& params, bool dp_enabled);

struct CalibrationSetup {
  int n = 100;
  double tau = 1.0;
  double kappa = 1.0;
  double gamma = 1.0;
  AttackSampler sampler = AttackSampler::kShiftedLaplace;
};

struct CalibrationResult {
  double outliers_nodp = 0.0;     // raw values against tau
  double outliers_dp_tau = 0.0;   // bounded-LDP values against tau
  double outliers_dp = 0.0;       // bounded-LDP values against tau * kappa
  double outliers_attack = 0.0;   // poisoned values against tau * kappa
  double rmse = 0.0;              // poisoned values vs originals
};

// One round of the outlier experiment: n values drawn uniformly from
// [lower, upper] serve as each entry's historical reference Q0. The detector
// then sees the values unchanged, after the bounded Laplace mechanism, and
// after the optimal attack at `gamma` (value + attack noise conditioned on
// (lower, upper)), and counts deviations above the threshold. Draw order is
// fixed (values, LDP noise, attack noise) so that rounds with the same seed
// share the values and LDP draws across gamma and kappa.
CalibrationResult CalibrationExperiment(const CalibrationSetup& setup,
                                        const PrivacyParams& privacy, Rng& rng);

// Mean of `reps` rounds, each with its own substream of `seed`.
CalibrationResult CalibrationAverage(const CalibrationSetup& setup,
                                     const PrivacyParams& privacy, int reps,
                                     uint64_t seed);

// Smallest kappa at which bounded-LDP deviations can never cross tau':
// |upper - lower| / tau, at least 1.
double KappaForBoundedNoise(double tau, const PrivacyParams& privacy);

}  // namespace ldpmarl

#endif  // LDPMARL_DETECTOR_H_
