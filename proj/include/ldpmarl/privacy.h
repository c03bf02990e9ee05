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

// Local differential privacy for shared Q-values: the Laplace mechanism and
// its bounded variant, which conditions the noisy output on [lower, upper].

#ifndef LDPMARL_PRIVACY_H_
#define LDPMARL_PRIVACY_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ldpmarl/rng.h"

namespace ldpmarl {

struct PrivacyParams {
  double epsilon = 1.0;
  double lower = -1.5;
  double upper = 10.0;
  // Multiplier in the scale b = alpha * |upper - lower| / epsilon. Follows the
  // learner's alpha unless overridden.
  double alpha = 0.10;

  double Sensitivity() const { return upper - lower; }
  double Scale() const { return alpha * Sensitivity() / epsilon; }

  // Params whose Scale() is exactly `scale` on [lower, upper].
  static PrivacyParams WithScale(double lower, double upper, double scale);

  // Throws ParameterError unless lower < upper, epsilon > 0, alpha > 0.
  void Validate() const;
};

// Rejection-sampling attempts before BlpPerturb gives up.
inline constexpr int64_t kMaxBlpRejections = 1'000'000;

// Laplace(mean, scale) at v in (-1/2, 1/2):
// mean - scale * sgn(v) * ln(1 - 2|v|).
double LaplaceQuantile(double mean, double scale, double v);

// One Laplace(mean, scale) draw. Throws ParameterError if scale <= 0.
double LaplaceSample(double mean, double scale, Rng& rng);

// Bounded Laplace mechanism: redraws q + Laplace(0, b) until the result lies
// in [lower, upper]. The accepted value has density
// exp(-|x - q| / b) / (2 b C_q) on [lower, upper], with C_q the Laplace mass
// of the interval. Throws PreconditionError if q is outside the interval and
// NumericError after kMaxBlpRejections failed attempts.
double BlpPerturb(double q, const PrivacyParams& params, Rng& rng);

// Clamps each entry into [lower, upper] and applies BlpPerturb to it.
std::vector<double> PerturbQVector(std::span<const double> qvec,
                                   const PrivacyParams& params, Rng& rng);

// Density of the bounded mechanism's output given input q.
double BlpPdf(double x, double q, const PrivacyParams& params);

}  // namespace ldpmarl

#endif  // LDPMARL_PRIVACY_H_
