// Copyright 2026 The fairtest-sym Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FAIRTEST_RANDOM_H_
#define FAIRTEST_RANDOM_H_

#include <cstdint>
#include <random>

namespace fairtest {

// Seeded generator used by every randomized operation.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. The standard distributions are not (their algorithms differ
// between library implementations), so the helpers below map raw engine
// output to values themselves. Same seed gives the same stream on any
// conforming toolchain, which is what makes reports byte-reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform integer in the closed interval [lo, hi]. Requires lo <= hi.
  int UniformInt(int lo, int hi) {
    const std::uint64_t span =
        static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo) + 1;
    // Rejection sampling removes modulo bias.
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span);
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return static_cast<int>(lo + static_cast<std::int64_t>(draw % span));
  }

  // Uniform index in [0, n). Requires n > 0.
  std::size_t UniformIndex(std::size_t n) {
    return static_cast<std::size_t>(UniformInt(0, static_cast<int>(n) - 1));
  }

  // Uniform double in [0, 1) with 53 random bits.
  double UniformReal() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool Bernoulli(double p) { return UniformReal() < p; }

  // Derives an independent child seed; lets sub-procedures own a stream
  // without perturbing the parent's sequence beyond one draw.
  std::uint64_t Fork() { return engine_() ^ 0x9E3779B97F4A7C15ULL; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fairtest

#endif  // FAIRTEST_RANDOM_H_
