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

#include "ldpmarl/attack.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "ldpmarl/agent.h"
#include "ldpmarl/errors.h"

namespace ldpmarl {

std::string_view AttackModeName(AttackMode mode) {
  return mode == AttackMode::kInternal ? "internal" : "external";
}

std::string_view AttackSamplerName(AttackSampler sampler) {
  return sampler == AttackSampler::kShiftedLaplace ? "shifted-laplace"
                                                   : "tilted";
}

std::optional<AttackMode> ParseAttackMode(std::string_view name) {
  if (name == "internal") return AttackMode::kInternal;
  if (name == "external") return AttackMode::kExternal;
  return std::nullopt;
}

std::optional<AttackSampler> ParseAttackSampler(std::string_view name) {
  if (name == "shifted-laplace") return AttackSampler::kShiftedLaplace;
  if (name == "tilted") return AttackSampler::kTilted;
  return std::nullopt;
}

std::string_view AcceptedByName(AcceptedBy accepted_by) {
  return accepted_by == AcceptedBy::kQCondition ? "q-condition"
                                                : "tau-gamma-cap";
}

void AttackParams::Validate() const {
  if (tau_gamma < 1) throw ConfigError("attack.tau_gamma must be >= 1");
  if (!(attacker_ratio >= 0.0 && attacker_ratio <= 1.0)) {
    throw ConfigError("attacker ratio must lie in [0, 1]");
  }
  if (!(external_gamma > 0.0)) {
    throw ConfigError("attack.external_gamma must be > 0");
  }
  if (!std::isfinite(theta)) throw ConfigError("attack.theta must be finite");
}

double LagrangeResidualFunction(double t) {
  return 2.0 * t / (1.0 - t) + std::log1p(-t);
}

double SolveLagrangeMultiplier(double gamma, double b) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw ParameterError("gamma must be positive, got " +
                         std::to_string(gamma));
  }
  if (!(b > 0.0)) throw ParameterError("scale b must be positive");
  // g(t) = 2t/(1-t) + ln(1-t) has g(0) = 0, g'(t) = (1+t)/(1-t)^2 > 0 on
  // (0, 1) and g -> inf as t -> 1, so [0, 1) always brackets exactly one
  // root for gamma > 0 and bisection cannot lose it.
  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (LagrangeResidualFunction(mid) < gamma) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // Of the two bracket ends, keep the one with the smaller residual; hi < 1
  // whenever the loop moved it.
  double t = lo;
  if (hi < 1.0 && std::fabs(LagrangeResidualFunction(hi) - gamma) <
                      std::fabs(LagrangeResidualFunction(lo) - gamma)) {
    t = hi;
  }
  if (!(t > 0.0)) t = hi;
  return b / std::sqrt(t);
}

double AttackMean(double theta, double c, double b) {
  if (!(b > 0.0) || !(c > b)) {
    throw ParameterError("attack mean needs c > b > 0 (c=" + std::to_string(c) +
                         ", b=" + std::to_string(b) + ")");
  }
  const double b2 = b * b;
  const double c2 = c * c;
  return (b2 * (theta - 2.0 * c) - theta * c2) / (b2 - c2);
}

AdversarialProfile MakeProfile(double gamma, double b, double theta) {
  AdversarialProfile p;
  p.gamma = gamma;
  p.b = b;
  p.theta = theta;
  p.c = SolveLagrangeMultiplier(gamma, b);
  p.mu_star = AttackMean(theta, p.c, b);
  return p;
}

TwoSidedExponential AttackNoiseLaw(const AdversarialProfile& profile,
                                   AttackSampler sampler, double offset) {
  if (sampler == AttackSampler::kShiftedLaplace) {
    return TwoSidedExponential::Laplace(profile.mu_star + offset, profile.b);
  }
  return TwoSidedExponential::Tilted(profile.theta + offset, profile.b,
                                     profile.c);
}

double SampleAdversarial(const AdversarialProfile& profile,
                         AttackSampler sampler, Rng& rng) {
  if (sampler == AttackSampler::kShiftedLaplace) {
    return LaplaceSample(profile.mu_star, profile.b, rng);
  }
  return AttackNoiseLaw(profile, sampler).Sample(rng);
}

double TiltedNormalizer(double b, double c) {
  return (c * c - b * b) / (2.0 * b * c * c);
}

double TiltedPdf(double x, const AdversarialProfile& profile) {
  const double d = x - profile.theta;
  return TiltedNormalizer(profile.b, profile.c) *
         std::exp(-std::fabs(d) / profile.b + d / profile.c);
}

PoisoningAttack::PoisoningAttack(const AttackParams& params,
                                 const PrivacyParams& privacy)
    : params_(params), privacy_(privacy) {
  params_.Validate();
  privacy_.Validate();
  const double b = privacy_.Scale();
  for (int gamma = 1; gamma <= params_.tau_gamma + 1; ++gamma) {
    ladder_.push_back(MakeProfile(gamma, b, params_.theta));
  }
  external_ = MakeProfile(params_.external_gamma, b, params_.theta);
}

const AdversarialProfile& PoisoningAttack::profile(int gamma) const {
  if (gamma < 1 || gamma > static_cast<int>(ladder_.size())) {
    throw PreconditionError("no profile for gamma " + std::to_string(gamma));
  }
  return ladder_[gamma - 1];
}

PoisonedVector PoisoningAttack::Advise(
    std::span<const double> attacker_row,
    std::optional<std::span<const double>> advisee_row, Rng& rng) const {
  PoisonedVector out;
  std::span<const double> target = attacker_row;
  if (advisee_row.has_value() && !params_.blind) {
    target = *advisee_row;
  } else {
    out.used_fallback = true;
  }
  if (target.size() != attacker_row.size()) {
    throw ProtocolError("advisee and attacker rows differ in length");
  }
  const int best = ArgMax(target);
  out.values.resize(attacker_row.size());

  for (int gamma = 1;; ++gamma) {
    const AdversarialProfile& prof = profile(gamma);
    for (size_t a = 0; a < attacker_row.size(); ++a) {
      // Redrawing until the value lands in (lower, upper) is the same law as
      // sampling the conditioned distribution directly, which stays cheap
      // when mu* pushes nearly all mass past the upper bound.
      out.values[a] = AttackNoiseLaw(prof, params_.sampler, attacker_row[a])
                          .SampleTruncated(privacy_.lower, privacy_.upper, rng);
    }
    out.gamma = gamma;
    out.mu_star = prof.mu_star;
    out.c = prof.c;
    if (gamma > params_.tau_gamma) {
      out.accepted_by = AcceptedBy::kTauGammaCap;
      return out;
    }
    if (out.values[best] < target[best]) {
      out.accepted_by = AcceptedBy::kQCondition;
      return out;
    }
  }
}

std::vector<double> PoisoningAttack::ExternalInject(
    std::span<const double> benign, const AdversarialProfile& profile,
    Rng& rng) const {
  std::vector<double> out;
  out.reserve(benign.size());
  for (double v : benign) {
    const double eta = SampleAdversarial(profile, params_.sampler, rng);
    out.push_back(std::clamp(v + eta, privacy_.lower, privacy_.upper));
  }
  return out;
}

int AttackerCount(int num_agents, double ratio) {
  const int k = static_cast<int>(std::ceil(ratio * num_agents - 1e-9));
  return std::clamp(k, 0, num_agents);
}

std::vector<int> SelectAttackers(int num_agents, double ratio, Rng& rng) {
  std::vector<int> ids(num_agents);
  std::iota(ids.begin(), ids.end(), 0);
  for (int i = num_agents - 1; i > 0; --i) {
    std::swap(ids[i], ids[rng.UniformInt(i + 1)]);
  }
  ids.resize(AttackerCount(num_agents, ratio));
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace ldpmarl
