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

#ifndef ALTL_TESTS_TEST_UTIL_HPP_
#define ALTL_TESTS_TEST_UTIL_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "altl/data.hpp"
#include "altl/matrix.hpp"
#include "altl/random.hpp"

namespace altl::testing {

inline std::vector<std::vector<double>> random_points(Rng& rng, std::size_t n, std::size_t dim,
                                                      double lo = -1.0, double hi = 1.0) {
  std::vector<std::vector<double>> out(n, std::vector<double>(dim));
  for (auto& p : out) {
    for (auto& v : p) v = rng.uniform(lo, hi);
  }
  return out;
}

inline std::vector<double> random_vector(Rng& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::vector<double> out(n);
  for (auto& v : out) v = rng.uniform(lo, hi);
  return out;
}

// Labeled examples with random embeddings, features and 1..3 labels.
inline std::vector<Example> random_examples(Rng& rng, std::size_t n, std::size_t d, std::size_t m,
                                            std::size_t n_labels) {
  std::vector<Example> out;
  for (std::size_t i = 0; i < n; ++i) {
    Example ex;
    ex.id = "r" + std::to_string(i);
    ex.embedding = random_vector(rng, d);
    ex.surface_features.resize(m);
    for (auto& b : ex.surface_features) b = static_cast<std::uint8_t>(rng.below(2));
    LabelSet labels;
    const std::size_t count = 1 + rng.below(std::min<std::size_t>(3, n_labels));
    for (std::size_t k = 0; k < count; ++k) labels.push_back(rng.below(n_labels));
    ex.labels = normalize_labels(labels);
    out.push_back(std::move(ex));
  }
  return out;
}

}  // namespace altl::testing

#endif  // ALTL_TESTS_TEST_UTIL_HPP_
