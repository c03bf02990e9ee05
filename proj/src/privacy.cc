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

#include "ldpmarl/privacy.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ldpmarl/errors.h"

namespace ldpmarl {

PrivacyParams PrivacyParams::WithScale(double lower, double upper,
                                       double scale) {
  PrivacyParams p;
  p.lower = lower;
  p.upper = upper;
  p.epsilon = 1.0;
  p.alpha = scale / (upper - lower);
  return p;
}

void PrivacyParams::Validate() const {
  if (!(lower < upper)) throw ParameterError("privacy bounds need lower < upper");
  if (!(epsilon > 0.0)) throw ParameterError("privacy epsilon must be > 0");
  if (!(alpha > 0.0)) throw ParameterError("privacy alpha must be > 0");
  if (!std::isfinite(Scale())) throw ParameterError("privacy scale not finite");
}

double LaplaceQuantile(double mean, double scale, double v) {
  const double sign = (v > 0.0) - (v < 0.0);
  return mean - scale * sign * std::log1p(-2.0 * std::fabs(v));
}

double LaplaceSample(double mean, double scale, Rng& rng) {
  if (!(scale > 0.0)) throw ParameterError("Laplace scale must be positive");
  return LaplaceQuantile(mean, scale, rng.UniformOpen() - 0.5);
}

double BlpPerturb(double q, const PrivacyParams& params, Rng& rng) {
  if (!(q >= params.lower && q <= params.upper)) {
    throw PreconditionError("BLP input " + std::to_string(q) +
                            " outside [" + std::to_string(params.lower) +
                            ", " + std::to_string(params.upper) + "]");
  }
  const double b = params.Scale();
  for (int64_t attempt = 0; attempt < kMaxBlpRejections; ++attempt) {
    const double x = LaplaceSample(q, b, rng);
    if (x >= params.lower && x <= params.upper) return x;
  }
  throw NumericError("BLP rejection sampler exceeded " +
                     std::to_string(kMaxBlpRejections) + " draws (q=" +
                     std::to_string(q) + ", b=" + std::to_string(b) + ")");
}

std::vector<double> PerturbQVector(std::span<const double> qvec,
                                   const PrivacyParams& params, Rng& rng) {
  std::vector<double> out;
  out.reserve(qvec.size());
  for (double q : qvec) {
    if (!std::isfinite(q)) throw NumericError("non-finite Q-value in advice");
    out.push_back(
        BlpPerturb(std::clamp(q, params.lower, params.upper), params, rng));
  }
  return out;
}

double BlpPdf(double x, double q, const PrivacyParams& params) {
  if (x < params.lower || x > params.upper) return 0.0;
  const double b = params.Scale();
  // C_q = integral of exp(-|t - q| / b) / (2b) over [lower, upper].
  const double c_q = 1.0 - 0.5 * std::exp(-(q - params.lower) / b) -
                     0.5 * std::exp(-(params.upper - q) / b);
  return std::exp(-std::fabs(x - q) / b) / (2.0 * b * c_q);
}

}  // namespace ldpmarl
