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

#ifndef ALTL_CLUSTERING_HPP_
#define ALTL_CLUSTERING_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "altl/matrix.hpp"

namespace altl {

struct APConfig {
  double damping = 0.5;
  std::size_t max_iterations = 200;
  std::size_t convergence_window = 15;
  // Self-similarity s(k,k). Unset means the median of off-diagonal similarities.
  std::optional<double> preference;

  void validate() const;
};

struct ClusterResult {
  // Exemplar point indices, ascending.
  std::vector<std::size_t> exemplars;
  // assignment[i] is the exemplar point index that point i belongs to.
  std::vector<std::size_t> assignment;
  std::size_t iterations_run = 0;
  bool converged = false;

  // Position of assignment[i] within `exemplars`, i.e. a dense cluster id.
  std::vector<std::size_t> cluster_ids() const;

  bool operator==(const ClusterResult&) const = default;
};

// Affinity propagation on points (rows of `points`) with similarity
// s(i,k) = -||x_i - x_k||^2. Deterministic: no tie-breaking noise is added,
// ties resolve to the lowest index.
//
// Supported scale is n up to roughly 20000; memory is three n x n matrices.
ClusterResult affinity_propagation(const Matrix& points, const APConfig& config = {});
ClusterResult affinity_propagation(std::span<const std::vector<double>> points,
                                   const APConfig& config = {});

// Same algorithm on a precomputed n x n similarity matrix. The diagonal of
// `similarity` is ignored and replaced by the preference.
ClusterResult affinity_propagation_from_similarity(Matrix similarity, const APConfig& config = {});

// The exemplar points themselves, in exemplar order.
std::vector<std::vector<double>> centroids(const ClusterResult& result, const Matrix& points);

}  // namespace altl

#endif  // ALTL_CLUSTERING_HPP_
