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

#include "altl/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "altl/error.hpp"
#include "altl/kernels.hpp"
#include "altl/random.hpp"

namespace altl {
namespace {

void require_pool(std::size_t n_candidates, std::size_t batch_size) {
  if (n_candidates < batch_size) {
    fail(ErrorCode::kFailedPrecondition, "need at least " + std::to_string(batch_size) +
                                             " unlabeled candidates, have " +
                                             std::to_string(n_candidates));
  }
}

void require_same_dim(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows > 0 && b.rows > 0 && a.cols != b.cols) {
    fail(ErrorCode::kDimensionMismatch, std::string(what) + " have dimension " + std::to_string(a.cols) +
                                            ", candidates " + std::to_string(b.cols));
  }
}

// Distance from every candidate to its nearest labeled point; +inf when none.
std::vector<double> initial_min_distance(const Matrix& labeled, const Matrix& unlabeled) {
  std::vector<double> out(unlabeled.rows);
  kernels::parallel::nearest_distance(unlabeled.values, unlabeled.rows, labeled.values, labeled.rows,
                                      unlabeled.cols, out);
  return out;
}

// Greedy loop shared by both geometric strategies. `penalty` is subtracted
// from each candidate's coverage distance; an empty penalty means none.
std::vector<std::size_t> greedy_select(const Matrix& labeled, const Matrix& unlabeled,
                                       std::span<const double> penalty, std::size_t batch_size) {
  std::vector<double> min_dist = initial_min_distance(labeled, unlabeled);
  std::vector<bool> taken(unlabeled.rows, false);
  std::vector<std::size_t> picks;
  picks.reserve(batch_size);
  for (std::size_t step = 0; step < batch_size; ++step) {
    std::size_t best = unlabeled.rows;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t u = 0; u < unlabeled.rows; ++u) {
      if (taken[u]) continue;
      const double coverage = std::isinf(min_dist[u]) ? 0.0 : min_dist[u];
      const double score = penalty.empty() ? coverage : coverage - penalty[u];
      if (best == unlabeled.rows || score > best_score) {
        best = u;
        best_score = score;
      }
    }
    taken[best] = true;
    picks.push_back(best);
    kernels::parallel::min_distance_update(unlabeled.values, unlabeled.rows, unlabeled.cols,
                                           unlabeled.row(best), min_dist);
  }
  return picks;
}

}  // namespace

std::string_view strategy_name(Strategy strategy) {
  switch (strategy) {
    case Strategy::kAltl: return "altl";
    case Strategy::kCoreset: return "coreset";
    case Strategy::kMaxEntropy: return "maxentropy";
    case Strategy::kRandom: return "random";
  }
  return "altl";
}

Strategy parse_strategy(std::string_view name) {
  for (const auto s : {Strategy::kAltl, Strategy::kCoreset, Strategy::kMaxEntropy, Strategy::kRandom}) {
    if (name == strategy_name(s)) return s;
  }
  fail(ErrorCode::kInvalidArgument, "unknown strategy '" + std::string(name) + "'");
}

void AcquisitionConfig::validate() const {
  if (batch_size < 1) fail(ErrorCode::kInvalidArgument, "batch_size must be at least 1");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    fail(ErrorCode::kInvalidArgument, "lambda must be a finite non-negative number");
  }
}

std::vector<std::size_t> select_batch_altl(const Matrix& labeled, const Matrix& unlabeled,
                                           const Matrix& centroids, const AcquisitionConfig& config) {
  config.validate();
  require_pool(unlabeled.rows, config.batch_size);
  if (centroids.rows == 0) fail(ErrorCode::kInvalidArgument, "ALTL needs at least one centroid");
  require_same_dim(labeled, unlabeled, "labeled features");
  require_same_dim(centroids, unlabeled, "centroids");

  std::vector<double> penalty(unlabeled.rows);
  kernels::parallel::nearest_distance(unlabeled.values, unlabeled.rows, centroids.values,
                                      centroids.rows, unlabeled.cols, penalty);
  for (auto& p : penalty) p *= config.lambda;
  return greedy_select(labeled, unlabeled, penalty, config.batch_size);
}

std::vector<std::size_t> select_batch_coreset(const Matrix& labeled, const Matrix& unlabeled,
                                              const AcquisitionConfig& config) {
  config.validate();
  require_pool(unlabeled.rows, config.batch_size);
  require_same_dim(labeled, unlabeled, "labeled features");
  return greedy_select(labeled, unlabeled, {}, config.batch_size);
}

double entropy(std::span<const double> probabilities) {
  double h = 0.0;
  for (const double p : probabilities) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

std::vector<std::size_t> select_batch_maxentropy(const Matrix& probabilities,
                                                 const AcquisitionConfig& config) {
  config.validate();
  require_pool(probabilities.rows, config.batch_size);
  std::vector<double> h(probabilities.rows);
  for (std::size_t i = 0; i < probabilities.rows; ++i) {
    const auto row = probabilities.row(i);
    double sum = 0.0;
    for (const double p : row) {
      if (!std::isfinite(p) || p < 0.0) {
        fail(ErrorCode::kInvalidArgument, "candidate " + std::to_string(i) + " has an invalid probability");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-6) {
      fail(ErrorCode::kInvalidArgument, "candidate " + std::to_string(i) + " probabilities do not sum to 1");
    }
    h[i] = entropy(row);
  }
  std::vector<std::size_t> order(probabilities.rows);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return h[a] > h[b]; });
  order.resize(config.batch_size);
  return order;
}

std::vector<std::size_t> select_batch_random(std::size_t n_candidates, const AcquisitionConfig& config) {
  config.validate();
  require_pool(n_candidates, config.batch_size);
  Rng rng = Rng::stream(config.seed, Stream::kStrategy);
  return rng.sample_without_replacement(n_candidates, config.batch_size);
}

}  // namespace altl
