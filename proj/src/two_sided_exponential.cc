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

#include "ldpmarl/two_sided_exponential.h"

#include <cmath>

#include "ldpmarl/errors.h"

namespace ldpmarl {
namespace {

// Distance in (0, width) of an exponential(rate) variable conditioned on
// that interval, at quantile u in [0, 1).
double TruncatedExponential(double rate, double width, double u) {
  return -std::log1p(u * std::expm1(-rate * width)) / rate;
}

}  // namespace

TwoSidedExponential::TwoSidedExponential(double location, double left_rate,
                                         double right_rate)
    : location_(location), left_rate_(left_rate), right_rate_(right_rate) {
  if (!(left_rate > 0.0) || !(right_rate > 0.0) || !std::isfinite(location)) {
    throw ParameterError("two-sided exponential needs positive finite rates");
  }
  const double left_scale = 1.0 / left_rate;
  const double right_scale = 1.0 / right_rate;
  left_weight_ = left_scale / (left_scale + right_scale);
}

TwoSidedExponential TwoSidedExponential::Laplace(double mean, double scale) {
  if (!(scale > 0.0)) throw ParameterError("Laplace scale must be positive");
  return TwoSidedExponential(mean, 1.0 / scale, 1.0 / scale);
}

TwoSidedExponential TwoSidedExponential::Tilted(double theta, double b,
                                                double c) {
  if (!(b > 0.0) || !(c > b)) {
    throw ParameterError("tilted density needs c > b > 0");
  }
  return TwoSidedExponential(theta, 1.0 / b + 1.0 / c, 1.0 / b - 1.0 / c);
}

double TwoSidedExponential::Pdf(double x) const {
  if (x < location_) {
    return left_weight_ * left_rate_ * std::exp(left_rate_ * (x - location_));
  }
  return (1.0 - left_weight_) * right_rate_ *
         std::exp(-right_rate_ * (x - location_));
}

double TwoSidedExponential::Cdf(double x) const {
  if (x < location_) {
    return left_weight_ * std::exp(left_rate_ * (x - location_));
  }
  return 1.0 - (1.0 - left_weight_) * std::exp(-right_rate_ * (x - location_));
}

double TwoSidedExponential::Quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("quantile needs p in (0,1)");
  if (p < left_weight_) {
    return location_ + std::log(p / left_weight_) / left_rate_;
  }
  return location_ - std::log((1.0 - p) / (1.0 - left_weight_)) / right_rate_;
}

double TwoSidedExponential::Mean() const {
  return location_ + (1.0 - left_weight_) / right_rate_ -
         left_weight_ / left_rate_;
}

double TwoSidedExponential::Variance() const {
  const double second = 2.0 * (1.0 - left_weight_) / (right_rate_ * right_rate_) +
                        2.0 * left_weight_ / (left_rate_ * left_rate_);
  const double shift = Mean() - location_;
  return second - shift * shift;
}

double TwoSidedExponential::Sample(Rng& rng) const {
  return Quantile(rng.UniformOpen());
}

double TwoSidedExponential::IntervalMass(double lo, double hi) const {
  if (!(lo < hi)) return 0.0;
  const double w_left = left_weight_;
  const double w_right = 1.0 - left_weight_;
  if (hi <= location_) {
    return w_left * (std::exp(left_rate_ * (hi - location_)) -
                     std::exp(left_rate_ * (lo - location_)));
  }
  if (lo >= location_) {
    return w_right * (std::exp(-right_rate_ * (lo - location_)) -
                      std::exp(-right_rate_ * (hi - location_)));
  }
  return -w_left * std::expm1(-left_rate_ * (location_ - lo)) -
         w_right * std::expm1(-right_rate_ * (hi - location_));
}

double TwoSidedExponential::SampleTruncated(double lo, double hi,
                                            Rng& rng) const {
  if (!(lo < hi)) throw ParameterError("truncation interval is empty");
  // Every branch maps the uniform monotonically onto (lo, hi). Endpoint hits
  // from rounding are redrawn to keep the support open.
  while (true) {
    const double u = rng.Uniform();
    double x;
    if (hi <= location_) {
      x = hi - TruncatedExponential(left_rate_, hi - lo, 1.0 - u);
    } else if (lo >= location_) {
      x = lo + TruncatedExponential(right_rate_, hi - lo, u);
    } else {
      const double left_mass =
          -left_weight_ * std::expm1(-left_rate_ * (location_ - lo));
      const double right_mass =
          -(1.0 - left_weight_) * std::expm1(-right_rate_ * (hi - location_));
      const double v = u * (left_mass + right_mass);
      if (v < left_mass) {
        x = location_ - TruncatedExponential(left_rate_, location_ - lo,
                                             1.0 - v / left_mass);
      } else {
        x = location_ + TruncatedExponential(right_rate_, hi - location_,
                                             (v - left_mass) / right_mass);
      }
    }
    if (x > lo && x < hi) return x;
  }
}

}  // namespace ldpmarl
