// Copyright 2026 The ordsup Authors.
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

#ifndef ORDSUP_RNG_H_
#define ORDSUP_RNG_H_

#include <cstdint>
#include <random>

namespace ordsup {

inline uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seeded random state with platform-stable draws. std::mt19937_64 output is
// fixed by the standard; the distributions in <random> are not, so the
// bounded and real-valued draws are done by hand.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(SplitMix64(seed)) {}

  // Independent stream for item `position` of a run seeded with `seed`.
  static Rng Keyed(uint64_t seed, uint64_t position) {
    return Rng(SplitMix64(seed) ^ SplitMix64(~position));
  }

  uint64_t Next() { return engine_(); }

  // Uniform in [0, n). n must be positive.
  uint64_t UniformIndex(uint64_t n) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double UniformDouble() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) {
    return lo + (hi - lo) * UniformDouble();
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ordsup

#endif  // ORDSUP_RNG_H_
