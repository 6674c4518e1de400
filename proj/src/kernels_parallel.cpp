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

#include <cmath>
#include <cstddef>

#include "altl/kernels.hpp"
#include "kernel_rows.hpp"

namespace altl::kernels::parallel {
namespace {

// Below this many scalar operations a parallel region costs more than it saves.
constexpr std::size_t kMinParallelWork = std::size_t{1} << 15;

using Index = std::ptrdiff_t;

inline Index as_index(std::size_t n) { return static_cast<Index>(n); }

}  // namespace

void squared_distances(std::span<const double> points, std::size_t n, std::size_t dim,
                       std::span<double> out) {
#pragma omp parallel for schedule(static) if (n * n * dim >= kMinParallelWork)
  for (Index i = 0; i < as_index(n); ++i) {
    const auto row = static_cast<std::size_t>(i);
    detail::squared_distance_row(points.data(), n, dim, row, out.data() + row * n);
  }
}

void ap_responsibilities(std::span<const double> similarity, std::span<const double> availability,
                         std::span<double> responsibility, std::size_t n, double damping) {
#pragma omp parallel for schedule(static) if (n * n >= kMinParallelWork)
  for (Index i = 0; i < as_index(n); ++i) {
    detail::responsibility_row(similarity.data(), availability.data(), responsibility.data(), n,
                               damping, static_cast<std::size_t>(i));
  }
}

void ap_availabilities(std::span<const double> responsibility, std::span<double> availability,
                       std::size_t n, double damping) {
#pragma omp parallel for schedule(static) if (n * n >= kMinParallelWork)
  for (Index k = 0; k < as_index(n); ++k) {
    detail::availability_column(responsibility.data(), availability.data(), n, damping,
                                static_cast<std::size_t>(k));
  }
}

void min_distance_update(std::span<const double> candidates, std::size_t n, std::size_t dim,
                         std::span<const double> point, std::span<double> min_dist) {
#pragma omp parallel for schedule(static) if (n * dim >= kMinParallelWork)
  for (Index i = 0; i < as_index(n); ++i) {
    const auto row = static_cast<std::size_t>(i);
    const double d = std::sqrt(detail::squared_distance(candidates.data() + row * dim, point.data(), dim));
    if (d < min_dist[row]) min_dist[row] = d;
  }
}

void nearest_distance(std::span<const double> candidates, std::size_t n,
                      std::span<const double> references, std::size_t m, std::size_t dim,
                      std::span<double> out) {
#pragma omp parallel for schedule(static) if (n * m * dim >= kMinParallelWork)
  for (Index i = 0; i < as_index(n); ++i) {
    const auto row = static_cast<std::size_t>(i);
    out[row] = detail::nearest(candidates.data() + row * dim, references.data(), m, dim);
  }
}

void linear_forward(std::span<const double> x, std::size_t batch, std::size_t in,
                    std::span<const double> weights, std::span<const double> bias,
                    std::size_t out, std::span<double> y) {
#pragma omp parallel for schedule(static) if (batch * in * out >= kMinParallelWork)
  for (Index t = 0; t < as_index(batch); ++t) {
    const auto row = static_cast<std::size_t>(t);
    detail::forward_row(x.data() + row * in, in, weights.data(), bias.data(), out,
                        y.data() + row * out);
  }
}

void linear_backward(std::span<const double> x, std::size_t batch, std::size_t in,
                     std::span<const double> weights, std::size_t out,
                     std::span<const double> grad_y, std::span<double> grad_w,
                     std::span<double> grad_b, std::span<double> grad_x) {
  const bool worth_it = batch * in * out >= kMinParallelWork;
#pragma omp parallel for schedule(static) if (worth_it)
  for (Index o = 0; o < as_index(out); ++o) {
    const auto row = static_cast<std::size_t>(o);
    detail::weight_grad_row(x.data(), batch, in, out, grad_y.data(), row,
                            grad_w.data() + row * in, grad_b.data());
  }
  if (grad_x.empty()) return;
#pragma omp parallel for schedule(static) if (worth_it)
  for (Index t = 0; t < as_index(batch); ++t) {
    const auto row = static_cast<std::size_t>(t);
    detail::input_grad_row(weights.data(), in, out, grad_y.data() + row * out,
                           grad_x.data() + row * in);
  }
}

}  // namespace altl::kernels::parallel
