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

#ifndef ALTL_ACQUISITION_HPP_
#define ALTL_ACQUISITION_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "altl/matrix.hpp"

namespace altl {

enum class Strategy { kAltl, kCoreset, kMaxEntropy, kRandom };

std::string_view strategy_name(Strategy strategy);
Strategy parse_strategy(std::string_view name);

struct AcquisitionConfig {
  Strategy strategy = Strategy::kAltl;
  // Weight of the exemplar-attraction term.
  double lambda = 0.1;
  std::size_t batch_size = 10;
  std::uint64_t seed = 0;

  void validate() const;
};

// All selectors return positions into the unlabeled candidate set (rows of
// `unlabeled`), in selection order. Ties go to the lowest position. Distances
// are Euclidean.

// Greedy batch: each step picks the candidate maximizing
//   min distance to (labeled + already selected) - lambda * min distance to a centroid,
// and the pick immediately joins the labeled side for the following steps.
// With nothing labeled yet the first distance term is taken as 0.
std::vector<std::size_t> select_batch_altl(const Matrix& labeled, const Matrix& unlabeled,
                                           const Matrix& centroids, const AcquisitionConfig& config);

// Greedy k-center: repeatedly the candidate farthest from labeled + selected.
std::vector<std::size_t> select_batch_coreset(const Matrix& labeled, const Matrix& unlabeled,
                                              const AcquisitionConfig& config);

// Top-b candidates by entropy of their probability row (natural log).
std::vector<std::size_t> select_batch_maxentropy(const Matrix& probabilities,
                                                 const AcquisitionConfig& config);

// Uniform sample without replacement from n candidates.
std::vector<std::size_t> select_batch_random(std::size_t n_candidates, const AcquisitionConfig& config);

double entropy(std::span<const double> probabilities);

}  // namespace altl

#endif  // ALTL_ACQUISITION_HPP_
