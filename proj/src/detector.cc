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

#include "ldpmarl/detector.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ldpmarl/errors.h"

namespace ldpmarl {

double DetectorParams::PoisoningWindow() const {
  return std::fabs(tau * (1.0 - kappa));
}

void DetectorParams::Validate() const {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw ConfigError("detector.tau must be finite and >= 0");
  }
  if (!std::isfinite(kappa)) throw ConfigError("detector.kappa must be finite");
}

ReferenceTracker::ReferenceTracker(int num_states, int num_actions)
    : num_states_(num_states),
      num_actions_(num_actions),
      mean_(static_cast<size_t>(num_states) * num_actions, 0.0),
      count_(static_cast<size_t>(num_states) * num_actions, 0) {}

double ReferenceTracker::q0(StateId s, int a) const {
  return mean_.at(static_cast<size_t>(s) * num_actions_ + a);
}

int64_t ReferenceTracker::count(StateId s, int a) const {
  return count_.at(static_cast<size_t>(s) * num_actions_ + a);
}

void ReferenceTracker::Observe(StateId s, int a, double value) {
  const size_t i = static_cast<size_t>(s) * num_actions_ + a;
  ++count_.at(i);
  mean_[i] += (value - mean_[i]) / static_cast<double>(count_[i]);
}

std::string_view VerdictName(Verdict verdict) {
  return verdict == Verdict::kAccept ? "accept" : "alarm";
}

CheckResult Check(const AdviceRecord& record, ReferenceTracker& tracker,
                  const DetectorParams& params, bool dp_enabled) {
  if (record.state < 0 || record.state >= tracker.num_states() ||
      static_cast<int>(record.values.size()) != tracker.num_actions()) {
    throw PreconditionError("advice record does not fit the tracker");
  }
  CheckResult result;
  result.threshold = params.Threshold(dp_enabled);
  for (int a = 0; a < tracker.num_actions(); ++a) {
    result.max_deviation =
        std::max(result.max_deviation,
                 std::fabs(record.values[a] - tracker.q0(record.state, a)));
  }
  if (result.max_deviation > result.threshold) {
    result.verdict = Verdict::kAlarm;
    return result;
  }
  for (int a = 0; a < tracker.num_actions(); ++a) {
    tracker.Observe(record.state, a, record.values[a]);
  }
  return result;
}

CalibrationResult CalibrationExperiment(const CalibrationSetup& setup,
                                        const PrivacyParams& privacy,
                                        Rng& rng) {
  if (setup.n < 1) throw ParameterError("calibration needs n >= 1");
  privacy.Validate();
  const double lo = privacy.lower;
  const double hi = privacy.upper;
  const double tau = setup.tau;
  const double tau_prime = setup.tau * setup.kappa;

  std::vector<double> values(setup.n);
  for (double& v : values) v = lo + (hi - lo) * rng.Uniform();

  std::vector<double> noisy(setup.n);
  for (int i = 0; i < setup.n; ++i) noisy[i] = BlpPerturb(values[i], privacy, rng);

  const AdversarialProfile profile =
      MakeProfile(setup.gamma, privacy.Scale(), 0.0);
  std::vector<double> attacked(setup.n);
  for (int i = 0; i < setup.n; ++i) {
    attacked[i] = AttackNoiseLaw(profile, setup.sampler, values[i])
                      .SampleTruncated(lo, hi, rng);
  }

  // Without noise every entry equals its own reference, so outliers_nodp
  // stays at zero for any tau >= 0.
  CalibrationResult r;
  double sq = 0.0;
  for (int i = 0; i < setup.n; ++i) {
    const double dp_dev = std::fabs(noisy[i] - values[i]);
    if (dp_dev > tau) r.outliers_dp_tau += 1;
    if (dp_dev > tau_prime) r.outliers_dp += 1;
    const double attack_dev = attacked[i] - values[i];
    if (std::fabs(attack_dev) > tau_prime) r.outliers_attack += 1;
    sq += attack_dev * attack_dev;
  }
  r.rmse = std::sqrt(sq / setup.n);
  return r;
}

CalibrationResult CalibrationAverage(const CalibrationSetup& setup,
                                     const PrivacyParams& privacy, int reps,
                                     uint64_t seed) {
  if (reps < 1) throw ParameterError("calibration needs reps >= 1");
  CalibrationResult sum;
  for (int rep = 0; rep < reps; ++rep) {
    Rng rng(DeriveSeed(seed, "calibration", rep));
    const CalibrationResult r = CalibrationExperiment(setup, privacy, rng);
    sum.outliers_nodp += r.outliers_nodp;
    sum.outliers_dp_tau += r.outliers_dp_tau;
    sum.outliers_dp += r.outliers_dp;
    sum.outliers_attack += r.outliers_attack;
    sum.rmse += r.rmse;
  }
  const double k = static_cast<double>(reps);
  sum.outliers_nodp /= k;
  sum.outliers_dp_tau /= k;
  sum.outliers_dp /= k;
  sum.outliers_attack /= k;
  sum.rmse /= k;
  return sum;
}

double KappaForBoundedNoise(double tau, const PrivacyParams& privacy) {
  if (!(tau > 0.0)) throw ParameterError("tau must be positive");
  return std::max(1.0, privacy.Sensitivity() / tau);
}

}  // namespace ldpmarl
