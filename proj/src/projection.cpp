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

#include <algorithm>
#include <cmath>
#include <vector>

#include "altl/engine.hpp"
#include "altl/error.hpp"

namespace altl {
namespace {

constexpr std::size_t kMaxPowerIterations = 5000;
constexpr double kDirectionTolerance = 1e-15;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double normalize(std::vector<double>& v) {
  const double norm = std::sqrt(dot(v, v));
  if (norm > 0.0) {
    for (auto& x : v) x /= norm;
  }
  return norm;
}

void remove_component(std::vector<double>& v, std::span<const double> direction) {
  const double c = dot(v, direction);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * direction[i];
}

// w = X^T X v without forming the covariance matrix.
std::vector<double> gram_apply(const Matrix& x, std::span<const double> v) {
  std::vector<double> w(x.cols, 0.0);
  for (std::size_t i = 0; i < x.rows; ++i) {
    const auto row = x.row(i);
    const double c = dot(row, v);
    for (std::size_t j = 0; j < x.cols; ++j) w[j] += c * row[j];
  }
  return w;
}

// Power iteration for the leading direction orthogonal to `deflate`.
// Returns an empty vector when that subspace carries no variance.
std::vector<double> leading_direction(const Matrix& x, std::span<const double> deflate) {
  // Start from the row with the largest residual norm: it lies in the row
  // space, so it cannot be orthogonal to every principal direction.
  std::vector<double> v;
  double best = 0.0;
  for (std::size_t i = 0; i < x.rows; ++i) {
    std::vector<double> candidate(x.row(i).begin(), x.row(i).end());
    if (!deflate.empty()) remove_component(candidate, deflate);
    const double norm = dot(candidate, candidate);
    if (norm > best) {
      best = norm;
      v = std::move(candidate);
    }
  }
  if (v.empty() || normalize(v) == 0.0) return {};

  for (std::size_t it = 0; it < kMaxPowerIterations; ++it) {
    std::vector<double> next = gram_apply(x, v);
    if (!deflate.empty()) remove_component(next, deflate);
    if (normalize(next) == 0.0) return {};
    const double alignment = std::abs(dot(next, v));
    v = std::move(next);
    if (1.0 - alignment < kDirectionTolerance) break;
  }
  return v;
}

void fix_sign(std::vector<double>& v) {
  std::size_t largest = 0;
  for (std::size_t j = 1; j < v.size(); ++j) {
    if (std::abs(v[j]) > std::abs(v[largest])) largest = j;
  }
  if (v[largest] < 0.0) {
    for (auto& x : v) x = -x;
  }
}

}  // namespace

Matrix pca_projection(const Matrix& points) {
  if (points.rows < 2) fail(ErrorCode::kInvalidArgument, "projection needs at least two points");
  Matrix centered = points;
  for (std::size_t j = 0; j < points.cols; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < points.rows; ++i) mean += points(i, j);
    mean /= static_cast<double>(points.rows);
    for (std::size_t i = 0; i < points.rows; ++i) centered(i, j) -= mean;
  }

  Matrix out(points.rows, 2, 0.0);
  std::vector<double> first = leading_direction(centered, {});
  if (first.empty()) return out;
  fix_sign(first);
  std::vector<double> second = leading_direction(centered, first);
  // Numerically flat second direction: treat the input as rank one.
  if (!second.empty()) {
    const double var1 = dot(gram_apply(centered, first), first);
    const double var2 = dot(gram_apply(centered, second), second);
    if (var2 <= 1e-12 * var1) second.clear();
  }
  if (!second.empty()) fix_sign(second);

  for (std::size_t i = 0; i < points.rows; ++i) {
    out(i, 0) = dot(centered.row(i), first);
    if (!second.empty()) out(i, 1) = dot(centered.row(i), second);
  }
  return out;
}

}  // namespace altl
