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

#include "altl/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "altl/error.hpp"
#include "altl/kernels.hpp"

namespace altl {
namespace {

double median_off_diagonal(const Matrix& s) {
  const std::size_t n = s.rows;
  std::vector<double> values;
  values.reserve(n * (n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (i != k) values.push_back(s(i, k));
    }
  }
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lower + upper) / 2.0;
}

std::vector<std::size_t> exemplar_set(const Matrix& r, const Matrix& a) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < r.rows; ++k) {
    if (r(k, k) + a(k, k) > 0.0) out.push_back(k);
  }
  return out;
}

}  // namespace

void APConfig::validate() const {
  if (!(damping >= 0.5 && damping < 1.0)) {
    fail(ErrorCode::kInvalidArgument, "damping must lie in [0.5, 1)");
  }
  if (convergence_window < 1 || max_iterations < convergence_window) {
    fail(ErrorCode::kInvalidArgument, "need max_iterations >= convergence_window >= 1");
  }
  if (preference && !std::isfinite(*preference)) {
    fail(ErrorCode::kInvalidArgument, "preference must be finite");
  }
}

std::vector<std::size_t> ClusterResult::cluster_ids() const {
  std::vector<std::size_t> ids(assignment.size());
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    const auto it = std::lower_bound(exemplars.begin(), exemplars.end(), assignment[i]);
    ids[i] = static_cast<std::size_t>(it - exemplars.begin());
  }
  return ids;
}

ClusterResult affinity_propagation_from_similarity(Matrix s, const APConfig& config) {
  config.validate();
  const std::size_t n = s.rows;
  if (n == 0) fail(ErrorCode::kInvalidArgument, "affinity propagation needs at least one point");
  if (s.cols != n) fail(ErrorCode::kDimensionMismatch, "similarity matrix must be square");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (i != k && !std::isfinite(s(i, k))) {
        fail(ErrorCode::kInvalidArgument, "similarity matrix has non-finite entries");
      }
    }
  }

  ClusterResult result;
  if (n == 1) {
    result.exemplars = {0};
    result.assignment = {0};
    result.converged = true;
    return result;
  }

  const double preference = config.preference ? *config.preference : median_off_diagonal(s);
  for (std::size_t k = 0; k < n; ++k) s(k, k) = preference;

  Matrix r(n, n);
  Matrix a(n, n);
  std::vector<std::size_t> previous;
  std::size_t stable = 0;
  for (std::size_t it = 0; it < config.max_iterations; ++it) {
    kernels::parallel::ap_responsibilities(s.values, a.values, r.values, n, config.damping);
    kernels::parallel::ap_availabilities(r.values, a.values, n, config.damping);
    auto current = exemplar_set(r, a);
    stable = (it > 0 && current == previous) ? stable + 1 : 1;
    previous = std::move(current);
    result.iterations_run = it + 1;
    if (stable >= config.convergence_window && !previous.empty()) {
      result.converged = true;
      break;
    }
  }

  result.exemplars = std::move(previous);
  if (result.exemplars.empty()) {
    // No point has positive self-evidence (typically an oscillating run).
    // Keep the single strongest candidate so that every point has a cluster.
    std::size_t best = 0;
    for (std::size_t k = 1; k < n; ++k) {
      if (r(k, k) + a(k, k) > r(best, best) + a(best, best)) best = k;
    }
    result.exemplars = {best};
    result.converged = false;
  }

  result.assignment.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = result.exemplars.front();
    for (const auto k : result.exemplars) {
      if (s(i, k) > s(i, best)) best = k;
    }
    result.assignment[i] = best;
  }
  for (const auto k : result.exemplars) result.assignment[k] = k;
  return result;
}

ClusterResult affinity_propagation(const Matrix& points, const APConfig& config) {
  const std::size_t n = points.rows;
  if (n == 0) fail(ErrorCode::kInvalidArgument, "affinity propagation needs at least one point");
  for (const double v : points.values) {
    if (!std::isfinite(v)) fail(ErrorCode::kInvalidArgument, "points have non-finite coordinates");
  }
  Matrix s(n, n);
  kernels::parallel::squared_distances(points.values, n, points.cols, s.values);
  for (auto& v : s.values) v = -v;
  return affinity_propagation_from_similarity(std::move(s), config);
}

ClusterResult affinity_propagation(std::span<const std::vector<double>> points,
                                   const APConfig& config) {
  if (points.empty()) fail(ErrorCode::kInvalidArgument, "affinity propagation needs at least one point");
  const std::size_t dim = points.front().size();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim) {
      fail(ErrorCode::kDimensionMismatch, "point " + std::to_string(i) + " has dimension " +
                                              std::to_string(points[i].size()) + ", expected " +
                                              std::to_string(dim));
    }
  }
  return affinity_propagation(stack_rows(points), config);
}

std::vector<std::vector<double>> centroids(const ClusterResult& result, const Matrix& points) {
  std::vector<std::vector<double>> out;
  out.reserve(result.exemplars.size());
  for (const auto k : result.exemplars) {
    if (k >= points.rows) fail(ErrorCode::kInvalidArgument, "exemplar index out of range");
    const auto row = points.row(k);
    out.emplace_back(row.begin(), row.end());
  }
  return out;
}

}  // namespace altl
