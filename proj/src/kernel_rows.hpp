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

#ifndef ALTL_SRC_KERNEL_ROWS_HPP_
#define ALTL_SRC_KERNEL_ROWS_HPP_

// Per-row / per-column bodies shared by the serial and OpenMP kernel drivers.
// Keeping one body guarantees both drivers perform identical arithmetic.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>

namespace altl::kernels::detail {

inline double squared_distance(const double* a, const double* b, std::size_t dim) {
  double sum = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    const double diff = a[j] - b[j];
    sum += diff * diff;
  }
  return sum;
}

inline void squared_distance_row(const double* points, std::size_t n, std::size_t dim,
                                 std::size_t i, double* out_row) {
  const double* pi = points + i * dim;
  for (std::size_t k = 0; k < n; ++k) out_row[k] = squared_distance(pi, points + k * dim, dim);
}

inline void responsibility_row(const double* s, const double* a, double* r, std::size_t n,
                               double damping, std::size_t i) {
  const double* s_row = s + i * n;
  const double* a_row = a + i * n;
  double* r_row = r + i * n;
  double best = -std::numeric_limits<double>::infinity();
  double second = -std::numeric_limits<double>::infinity();
  std::size_t best_k = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double v = a_row[k] + s_row[k];
    if (v > best) {
      second = best;
      best = v;
      best_k = k;
    } else if (v > second) {
      second = v;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double competitor = (k == best_k) ? second : best;
    const double computed = s_row[k] - competitor;
    r_row[k] = damping * r_row[k] + (1.0 - damping) * computed;
  }
}

inline void availability_column(const double* r, double* a, std::size_t n, double damping,
                                 std::size_t k) {
  double positive_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != k) positive_sum += std::max(0.0, r[i * n + k]);
  }
  const double self_r = r[k * n + k];
  for (std::size_t i = 0; i < n; ++i) {
    double computed;
    if (i == k) {
      computed = positive_sum;
    } else {
      computed = std::min(0.0, self_r + positive_sum - std::max(0.0, r[i * n + k]));
    }
    a[i * n + k] = damping * a[i * n + k] + (1.0 - damping) * computed;
  }
}

inline double nearest(const double* c, const double* refs, std::size_t m, std::size_t dim) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < m; ++j) {
    best = std::min(best, std::sqrt(squared_distance(c, refs + j * dim, dim)));
  }
  return best;
}

inline void forward_row(const double* x_row, std::size_t in, const double* w, const double* b,
                        std::size_t out, double* y_row) {
  for (std::size_t o = 0; o < out; ++o) {
    const double* w_row = w + o * in;
    double sum = b[o];
    for (std::size_t j = 0; j < in; ++j) sum += w_row[j] * x_row[j];
    y_row[o] = sum;
  }
}

inline void weight_grad_row(const double* x, std::size_t batch, std::size_t in,
                            std::size_t out, const double* dy, std::size_t o, double* gw_row,
                            double* gb) {
  for (std::size_t j = 0; j < in; ++j) gw_row[j] = 0.0;
  double bias_sum = 0.0;
  for (std::size_t t = 0; t < batch; ++t) {
    const double g = dy[t * out + o];
    bias_sum += g;
    if (g == 0.0) continue;
    const double* x_row = x + t * in;
    for (std::size_t j = 0; j < in; ++j) gw_row[j] += g * x_row[j];
  }
  gb[o] = bias_sum;
}

inline void input_grad_row(const double* w, std::size_t in, std::size_t out,
                           const double* dy_row, double* gx_row) {
  for (std::size_t j = 0; j < in; ++j) gx_row[j] = 0.0;
  for (std::size_t o = 0; o < out; ++o) {
    const double g = dy_row[o];
    if (g == 0.0) continue;
    const double* w_row = w + o * in;
    for (std::size_t j = 0; j < in; ++j) gx_row[j] += g * w_row[j];
  }
}

}  // namespace altl::kernels::detail

#endif  // ALTL_SRC_KERNEL_ROWS_HPP_
