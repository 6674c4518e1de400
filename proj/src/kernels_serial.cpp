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

namespace altl::kernels::serial {

void squared_distances(std::span<const double> points, std::size_t n, std::size_t dim,
                       std::span<double> out) {
  for (std::size_t i = 0; i < n; ++i) {
    detail::squared_distance_row(points.data(), n, dim, i, out.data() + i * n);
  }
}

void ap_responsibilities(std::span<const double> similarity, std::span<const double> availability,
                         std::span<double> responsibility, std::size_t n, double damping) {
  for (std::size_t i = 0; i < n; ++i) {
    detail::responsibility_row(similarity.data(), availability.data(), responsibility.data(), n,
                               damping, i);
  }
}

void ap_availabilities(std::span<const double> responsibility, std::span<double> availability,
                       std::size_t n, double damping) {
  for (std::size_t k = 0; k < n; ++k) {
    detail::availability_column(responsibility.data(), availability.data(), n, damping, k);
  }
}

void min_distance_update(std::span<const double> candidates, std::size_t n, std::size_t dim,
                         std::span<const double> point, std::span<double> min_dist) {
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::sqrt(detail::squared_distance(candidates.data() + i * dim, point.data(), dim));
    if (d < min_dist[i]) min_dist[i] = d;
  }
}

void nearest_distance(std::span<const double> candidates, std::size_t n,
                      std::span<const double> references, std::size_t m, std::size_t dim,
                      std::span<double> out) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = detail::nearest(candidates.data() + i * dim, references.data(), m, dim);
  }
}

void linear_forward(std::span<const double> x, std::size_t batch, std::size_t in,
                    std::span<const double> weights, std::span<const double> bias,
                    std::size_t out, std::span<double> y) {
  for (std::size_t t = 0; t < batch; ++t) {
    detail::forward_row(x.data() + t * in, in, weights.data(), bias.data(), out,
                        y.data() + t * out);
  }
}

void linear_backward(std::span<const double> x, std::size_t batch, std::size_t in,
                     std::span<const double> weights, std::size_t out,
                     std::span<const double> grad_y, std::span<double> grad_w,
                     std::span<double> grad_b, std::span<double> grad_x) {
  for (std::size_t o = 0; o < out; ++o) {
    detail::weight_grad_row(x.data(), batch, in, out, grad_y.data(), o, grad_w.data() + o * in,
                            grad_b.data());
  }
  if (grad_x.empty()) return;
  for (std::size_t t = 0; t < batch; ++t) {
    detail::input_grad_row(weights.data(), in, out, grad_y.data() + t * out,
                           grad_x.data() + t * in);
  }
}

}  // namespace altl::kernels::serial
