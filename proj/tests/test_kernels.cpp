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

#include "altl/kernels.hpp"

#include <omp.h>

#include <limits>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.hpp"

namespace altl {
namespace {

using testing::random_vector;

class KernelParity : public ::testing::Test {
 protected:
  void SetUp() override {
    saved_threads_ = omp_get_max_threads();
    omp_set_num_threads(4);
  }
  void TearDown() override { omp_set_num_threads(saved_threads_); }

  Rng rng_{42};

 private:
  int saved_threads_ = 1;
};

TEST_F(KernelParity, SquaredDistances) {
  const std::size_t n = 150, dim = 7;
  const auto points = random_vector(rng_, n * dim);
  std::vector<double> a(n * n), b(n * n);
  kernels::serial::squared_distances(points, n, dim, a);
  kernels::parallel::squared_distances(points, n, dim, b);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a[0], 0.0);
  EXPECT_EQ(a[1 * n + 2], a[2 * n + 1]);
}

TEST_F(KernelParity, AffinityMessages) {
  const std::size_t n = 200;
  const auto s = random_vector(rng_, n * n, -5.0, 0.0);
  auto a_serial = random_vector(rng_, n * n, -1.0, 0.0);
  auto r_serial = random_vector(rng_, n * n);
  auto a_par = a_serial;
  auto r_par = r_serial;
  for (int round = 0; round < 3; ++round) {
    kernels::serial::ap_responsibilities(s, a_serial, r_serial, n, 0.5);
    kernels::serial::ap_availabilities(r_serial, a_serial, n, 0.5);
    kernels::parallel::ap_responsibilities(s, a_par, r_par, n, 0.5);
    kernels::parallel::ap_availabilities(r_par, a_par, n, 0.5);
  }
  EXPECT_EQ(r_serial, r_par);
  EXPECT_EQ(a_serial, a_par);
}

TEST_F(KernelParity, DistanceUpdates) {
  const std::size_t n = 3000, m = 40, dim = 16;
  const auto candidates = random_vector(rng_, n * dim);
  const auto refs = random_vector(rng_, m * dim);
  std::vector<double> a(n), b(n);
  kernels::serial::nearest_distance(candidates, n, refs, m, dim, a);
  kernels::parallel::nearest_distance(candidates, n, refs, m, dim, b);
  EXPECT_EQ(a, b);

  const auto point = random_vector(rng_, dim);
  kernels::serial::min_distance_update(candidates, n, dim, point, a);
  kernels::parallel::min_distance_update(candidates, n, dim, point, b);
  EXPECT_EQ(a, b);
}

TEST_F(KernelParity, LinearLayer) {
  const std::size_t batch = 64, in = 48, out = 40;
  const auto x = random_vector(rng_, batch * in);
  const auto w = random_vector(rng_, out * in);
  const auto bias = random_vector(rng_, out);
  std::vector<double> y1(batch * out), y2(batch * out);
  kernels::serial::linear_forward(x, batch, in, w, bias, out, y1);
  kernels::parallel::linear_forward(x, batch, in, w, bias, out, y2);
  EXPECT_EQ(y1, y2);

  const auto dy = random_vector(rng_, batch * out);
  std::vector<double> gw1(out * in), gb1(out), gx1(batch * in);
  std::vector<double> gw2(out * in), gb2(out), gx2(batch * in);
  kernels::serial::linear_backward(x, batch, in, w, out, dy, gw1, gb1, gx1);
  kernels::parallel::linear_backward(x, batch, in, w, out, dy, gw2, gb2, gx2);
  EXPECT_EQ(gw1, gw2);
  EXPECT_EQ(gb1, gb2);
  EXPECT_EQ(gx1, gx2);
}

TEST(Kernels, NearestDistanceWithoutReferencesIsInfinite) {
  const std::vector<double> candidates{0.0, 1.0, 2.0};
  std::vector<double> out(3);
  kernels::serial::nearest_distance(candidates, 3, {}, 0, 1, out);
  for (const double v : out) EXPECT_EQ(v, std::numeric_limits<double>::infinity());
}

TEST(Kernels, LinearForwardMatchesHandComputation) {
  // y = x W^T + b for a single 2-d input and a 2 x 2 weight.
  const std::vector<double> x{1.0, 2.0};
  const std::vector<double> w{3.0, 4.0, -1.0, 0.5};
  const std::vector<double> b{0.5, -0.5};
  std::vector<double> y(2);
  kernels::serial::linear_forward(x, 1, 2, w, b, 2, y);
  EXPECT_DOUBLE_EQ(y[0], 11.5);
  EXPECT_DOUBLE_EQ(y[1], -0.5);
}

}  // namespace
}  // namespace altl
