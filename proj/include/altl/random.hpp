/*
 * Copyright 2026 The ALTL Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ALTL_RANDOM_HPP_
#define ALTL_RANDOM_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace altl {

// Independent purposes that draw randomness. Each gets its own stream so that,
// for example, changing the dropout pattern never perturbs the train/test split.
enum class Stream : std::uint64_t {
  kSplit = 1,
  kSynth = 2,
  kInit = 3,
  kDropout = 4,
  kStrategy = 5,
  kShuffle = 6,
  kInitialPool = 7,
  kSession = 8,
};

std::uint64_t splitmix64(std::uint64_t x);

// Portable seeded generator. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; the derived distributions are written
// out here because the std:: distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  // Derives a generator for (seed, purpose, index). Distinct triples give
  // statistically independent streams.
  static Rng stream(std::uint64_t seed, Stream purpose, std::uint64_t index = 0);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). Unbiased (rejection sampling). n must be > 0.
  std::size_t below(std::size_t n);

  // Standard normal via Box-Muller.
  double normal();

  // Index drawn with probability proportional to weights[i].
  std::size_t discrete(std::span<const double> weights);

  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[below(i)]);
    }
  }

  // k distinct indices from [0, n) in draw order (partial Fisher-Yates).
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace altl

#endif  // ALTL_RANDOM_HPP_
