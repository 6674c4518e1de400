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

#ifndef ALTL_KERNELS_HPP_
#define ALTL_KERNELS_HPP_

// Numerical inner loops. Every kernel exists twice with identical signatures:
// `serial` is the plain reference, `parallel` spreads the same per-element
// work across OpenMP threads. Each output element is produced by one thread
// with the same reduction order as the serial loop, so both variants return
// bit-identical results.
//
// All matrices are row-major and passed as flat spans plus dimensions.
//
//   squared_distances    out[i*n+k] = ||p_i - p_k||^2
//   ap_responsibilities  r <- d*r + (1-d)*(s(i,k) - max_{k'!=k} [a(i,k') + s(i,k')])
//   ap_availabilities    a(i,k) <- d*a + (1-d)*min(0, r(k,k) + sum_{i' not in {i,k}} max(0, r(i',k)))
//                        a(k,k) <- d*a + (1-d)*sum_{i' != k} max(0, r(i',k))
//   min_distance_update  min_dist[i] = min(min_dist[i], ||c_i - point||)
//   nearest_distance     out[i] = min_j ||c_i - r_j||, +inf when there are no references
//   linear_forward       y = x W^T + b   (x: batch x in, W: out x in)
//   linear_backward      grad_w = dy^T x, grad_b = colsum(dy), grad_x = dy W
//                        (grad_x may be empty when the input gradient is unused)

#include <cstddef>
#include <span>

namespace altl::kernels {

namespace serial {

void squared_distances(std::span<const double> points, std::size_t n, std::size_t dim,
                       std::span<double> out);
void ap_responsibilities(std::span<const double> similarity, std::span<const double> availability,
                         std::span<double> responsibility, std::size_t n, double damping);
void ap_availabilities(std::span<const double> responsibility, std::span<double> availability,
                       std::size_t n, double damping);
void min_distance_update(std::span<const double> candidates, std::size_t n, std::size_t dim,
                         std::span<const double> point, std::span<double> min_dist);
void nearest_distance(std::span<const double> candidates, std::size_t n,
                      std::span<const double> references, std::size_t m, std::size_t dim,
                      std::span<double> out);
void linear_forward(std::span<const double> x, std::size_t batch, std::size_t in,
                    std::span<const double> weights, std::span<const double> bias,
                    std::size_t out, std::span<double> y);
void linear_backward(std::span<const double> x, std::size_t batch, std::size_t in,
                     std::span<const double> weights, std::size_t out,
                     std::span<const double> grad_y, std::span<double> grad_w,
                     std::span<double> grad_b, std::span<double> grad_x);

}  // namespace serial

namespace parallel {

void squared_distances(std::span<const double> points, std::size_t n, std::size_t dim,
                       std::span<double> out);
void ap_responsibilities(std::span<const double> similarity, std::span<const double> availability,
                         std::span<double> responsibility, std::size_t n, double damping);
void ap_availabilities(std::span<const double> responsibility, std::span<double> availability,
                       std::size_t n, double damping);
void min_distance_update(std::span<const double> candidates, std::size_t n, std::size_t dim,
                         std::span<const double> point, std::span<double> min_dist);
void nearest_distance(std::span<const double> candidates, std::size_t n,
                      std::span<const double> references, std::size_t m, std::size_t dim,
                      std::span<double> out);
void linear_forward(std::span<const double> x, std::size_t batch, std::size_t in,
                    std::span<const double> weights, std::span<const double> bias,
                    std::size_t out, std::span<double> y);
void linear_backward(std::span<const double> x, std::size_t batch, std::size_t in,
                     std::span<const double> weights, std::size_t out,
                     std::span<const double> grad_y, std::span<double> grad_w,
                     std::span<double> grad_b, std::span<double> grad_x);

}  // namespace parallel

}  // namespace altl::kernels

#endif  // ALTL_KERNELS_HPP_
