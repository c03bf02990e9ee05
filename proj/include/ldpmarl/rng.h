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

#ifndef LDPMARL_RNG_H_
#define LDPMARL_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace ldpmarl {

// Seed of the named substream `name`/`index` of a root seed. Distinct
// (name, index) pairs give statistically independent streams, and a stream's
// seed never depends on which other streams exist.
uint64_t DeriveSeed(uint64_t root, std::string_view name, uint64_t index = 0);

// Seedable random source. Every draw is a pure function of the seed and the
// number of prior draws, so runs replay bit for bit.
class Rng {
 public:
  explicit Rng(uint64_t seed = 0) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on the open interval (0, 1).
  double UniformOpen() {
    double u;
    do {
      u = Uniform();
    } while (u == 0.0);
    return u;
  }

  // Uniform integer in [0, n). Requires n > 0.
  int UniformInt(int n);

  bool Bernoulli(double p) { return Uniform() < p; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ldpmarl

#endif  // LDPMARL_RNG_H_
