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

// Test-side numerical oracles, written independently of the library.

#ifndef LDPMARL_TESTS_ORACLES_H_
#define LDPMARL_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace ldpmarl::testing {

// Tabulated CDF of an unnormalized density on [lo, hi], built with composite
// Simpson panels. `breaks` lists interior points where the density has a
// kink; each piece gets its own panels so the rule stays accurate.
class NumericCdf {
 public:
  NumericCdf(const std::function<double(double)>& density, double lo,
             double hi, std::vector<double> breaks = {}, int panels = 20000) {
    std::vector<double> edges = {lo};
    std::sort(breaks.begin(), breaks.end());
    for (double b : breaks) {
      if (b > lo && b < hi) edges.push_back(b);
    }
    edges.push_back(hi);
    double total = 0.0;
    xs_.push_back(lo);
    cum_.push_back(0.0);
    for (size_t k = 0; k + 1 < edges.size(); ++k) {
      const double a = edges[k];
      const double h = (edges[k + 1] - a) / panels;
      for (int i = 0; i < panels; ++i) {
        const double x0 = a + i * h;
        const double x1 = (i + 1 == panels) ? edges[k + 1] : x0 + h;
        total += (x1 - x0) / 6.0 *
                 (density(x0) + 4.0 * density(0.5 * (x0 + x1)) + density(x1));
        xs_.push_back(x1);
        cum_.push_back(total);
      }
    }
    total_ = total;
    for (double& c : cum_) c /= total;
  }

  // Integral of the unnormalized density.
  double total() const { return total_; }

  double operator()(double x) const {
    if (x <= xs_.front()) return 0.0;
    if (x >= xs_.back()) return 1.0;
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    const size_t j = static_cast<size_t>(it - xs_.begin());
    const double t = (x - xs_[j - 1]) / (xs_[j] - xs_[j - 1]);
    return cum_[j - 1] + t * (cum_[j] - cum_[j - 1]);
  }

 private:
  std::vector<double> xs_;
  std::vector<double> cum_;
  double total_ = 0.0;
};

// Two-sided Kolmogorov-Smirnov statistic of `samples` against `cdf`.
template <typename Cdf>
double KsStatistic(std::vector<double> samples, const Cdf& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::max(f - i / n, (i + 1) / n - f));
  }
  return d;
}

inline double Mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / v.size();
}

inline double Variance(const std::vector<double>& v) {
  const double m = Mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / (v.size() - 1);
}

}  // namespace ldpmarl::testing

#endif  // LDPMARL_TESTS_ORACLES_H_
