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

// Privacy-exploiting poisoning. A compromised advisor hides a positive bias
// inside the LDP noise envelope: the bias mu* grows with the degree of
// poisoning gamma through the Lagrange multiplier c of the constrained
// attack-gain problem,
//
//   2 b^2 / (c^2 - b^2) + ln(1 - b^2 / c^2) = gamma,
//   mu* = (b^2 (theta - 2c) - theta c^2) / (b^2 - c^2),
//
// and the attacker escalates gamma per request until its vector demotes the
// advisee's best action or gamma passes a cap.

#ifndef LDPMARL_ATTACK_H_
#define LDPMARL_ATTACK_H_

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ldpmarl/privacy.h"
#include "ldpmarl/rng.h"
#include "ldpmarl/two_sided_exponential.h"

namespace ldpmarl {

enum class AttackMode { kInternal, kExternal };
enum class AttackSampler { kShiftedLaplace, kTilted };

std::string_view AttackModeName(AttackMode mode);
std::string_view AttackSamplerName(AttackSampler sampler);
std::optional<AttackMode> ParseAttackMode(std::string_view name);
std::optional<AttackSampler> ParseAttackSampler(std::string_view name);

struct AdversarialProfile {
  double gamma = 0.0;
  double c = 0.0;
  double mu_star = 0.0;
  double b = 0.0;
  double theta = 0.0;
};

struct AttackParams {
  int tau_gamma = 12;
  AttackMode mode = AttackMode::kInternal;
  AttackSampler sampler = AttackSampler::kShiftedLaplace;
  double theta = 0.0;
  // Use the attacker's own row instead of the advisee's as the target.
  bool blind = false;
  double attacker_ratio = 0.0;
  // Fixed poisoning degree for channel (external) injection.
  double external_gamma = 4.0;

  void Validate() const;
};

// g(t) = 2t / (1 - t) + ln(1 - t) with t = b^2 / c^2 in (0, 1).
double LagrangeResidualFunction(double t);

// Unique c > b solving the Lagrange equation for `gamma`, by bisection on
// t = b^2 / c^2. Throws ParameterError unless gamma > 0 and b > 0.
double SolveLagrangeMultiplier(double gamma, double b);

// mu* for benign mean theta. Throws ParameterError unless c > b > 0.
double AttackMean(double theta, double c, double b);

AdversarialProfile MakeProfile(double gamma, double b, double theta);

// Noise law of the attacker: Laplace(mu*, b) for kShiftedLaplace, or the
// tilted density proportional to exp(-|x - theta|/b + (x - theta)/c) for
// kTilted (whose mean is mu*). `offset` shifts the law, e.g. by the
// attacker's own Q-value.
TwoSidedExponential AttackNoiseLaw(const AdversarialProfile& profile,
                                   AttackSampler sampler, double offset = 0.0);

// One adversarial noise draw eta_a.
double SampleAdversarial(const AdversarialProfile& profile,
                         AttackSampler sampler, Rng& rng);

// Normalizer (c^2 - b^2) / (2 b c^2) of the tilted density.
double TiltedNormalizer(double b, double c);
// Tilted density f*_a(x) evaluated with TiltedNormalizer.
double TiltedPdf(double x, const AdversarialProfile& profile);

enum class AcceptedBy { kQCondition, kTauGammaCap };
std::string_view AcceptedByName(AcceptedBy accepted_by);

struct PoisonedVector {
  std::vector<double> values;
  int gamma = 0;
  double mu_star = 0.0;
  double c = 0.0;
  AcceptedBy accepted_by = AcceptedBy::kQCondition;
  // The advisee row was unavailable and the attacker's own row stood in.
  bool used_fallback = false;
};

// The adaptive poisoning loop. Profiles for gamma = 1 .. tau_gamma + 1 are
// solved once at construction.
class PoisoningAttack {
 public:
  PoisoningAttack(const AttackParams& params, const PrivacyParams& privacy);

  // For gamma = 1, 2, ...: draw Qbar(s,a) = Q_attacker(s,a) + eta_a per
  // action, conditioned on (lower, upper); accept once
  // Qbar(s, a_best) < Q_advisee(s, a_best) for the advisee's greedy action
  // a_best, or unconditionally once gamma > tau_gamma.
  PoisonedVector Advise(std::span<const double> attacker_row,
                        std::optional<std::span<const double>> advisee_row,
                        Rng& rng) const;

  // Benign (already perturbed) vector plus one adversarial draw per entry
  // at `profile`, clamped into [lower, upper].
  std::vector<double> ExternalInject(std::span<const double> benign,
                                     const AdversarialProfile& profile,
                                     Rng& rng) const;

  const AdversarialProfile& profile(int gamma) const;
  const AdversarialProfile& external_profile() const { return external_; }
  const AttackParams& params() const { return params_; }

 private:
  AttackParams params_;
  PrivacyParams privacy_;
  std::vector<AdversarialProfile> ladder_;  // index gamma - 1
  AdversarialProfile external_;
};

// Number of compromised agents, ceil(ratio * n).
int AttackerCount(int num_agents, double ratio);

// The first AttackerCount ids of a seeded shuffle of 0 .. n-1, sorted.
std::vector<int> SelectAttackers(int num_agents, double ratio, Rng& rng);

}  // namespace ldpmarl

#endif  // LDPMARL_ATTACK_H_
