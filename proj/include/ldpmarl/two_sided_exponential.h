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

#ifndef LDPMARL_TWO_SIDED_EXPONENTIAL_H_
#define LDPMARL_TWO_SIDED_EXPONENTIAL_H_

#include "ldpmarl/rng.h"

namespace ldpmarl {

// Density proportional to exp(left_rate * (x - m)) for x < m and
// exp(-right_rate * (x - m)) for x >= m. Laplace(m, b) is the symmetric case
// with both rates 1/b; the exponentially tilted Laplace used by the attacker
// has rates 1/b + 1/c (left) and 1/b - 1/c (right).
class TwoSidedExponential {
 public:
  TwoSidedExponential(double location, double left_rate, double right_rate);

  static TwoSidedExponential Laplace(double mean, double scale);
  // Density proportional to exp(-|x - theta| / b + (x - theta) / c), c > b.
  static TwoSidedExponential Tilted(double theta, double b, double c);

  double location() const { return location_; }
  double left_rate() const { return left_rate_; }
  double right_rate() const { return right_rate_; }
  // Probability mass left of the location.
  double left_weight() const { return left_weight_; }

  double Pdf(double x) const;
  double Cdf(double x) const;
  double Quantile(double p) const;
  double Mean() const;
  double Variance() const;

  double Sample(Rng& rng) const;

  // Exact draw conditioned on the open interval (lo, hi) by inverse CDF,
  // numerically stable when (lo, hi) sits deep in either tail.
  double SampleTruncated(double lo, double hi, Rng& rng) const;
  // P(lo < X < hi).
  double IntervalMass(double lo, double hi) const;

 private:
  double location_;
  double left_rate_;
  double right_rate_;
  double left_weight_;
};

}  // namespace ldpmarl

#endif  // LDPMARL_TWO_SIDED_EXPONENTIAL_H_
