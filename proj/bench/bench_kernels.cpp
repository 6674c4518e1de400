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

// Serial vs OpenMP kernels. Arg is the problem size; each pair of benchmarks
// runs the same inputs so the ratio is the speedup.

#include <benchmark/benchmark.h>

#include <vector>

#include "altl/kernels.hpp"
#include "altl/random.hpp"

namespace {

namespace k = altl::kernels;

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  altl::Rng rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(-1.0, 1.0);
  return v;
}

constexpr std::size_t kDim = 64;

template <auto Fn>
void squared_distances(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto points = noise(n * kDim, 1);
  std::vector<double> out(n * n);
  for (auto _ : state) {
    Fn(points, n, kDim, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <auto Resp, auto Avail>
void ap_sweep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto s = noise(n * n, 2);
  std::vector<double> r(n * n, 0.0), a(n * n, 0.0);
  for (auto _ : state) {
    Resp(s, a, r, n, 0.5);
    Avail(r, a, n, 0.5);
    benchmark::DoNotOptimize(a.data());
  }
}

template <auto Fn>
void nearest_distance(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::size_t m = 100;
  const auto candidates = noise(n * kDim, 3);
  const auto references = noise(m * kDim, 4);
  std::vector<double> out(n);
  for (auto _ : state) {
    Fn(candidates, n, references, m, kDim, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <auto Forward, auto Backward>
void linear_layer(benchmark::State& state) {
  const auto width = static_cast<std::size_t>(state.range(0));
  const std::size_t batch = 32;
  const auto x = noise(batch * width, 5);
  const auto w = noise(width * width, 6);
  const auto b = noise(width, 7);
  const auto dy = noise(batch * width, 8);
  std::vector<double> y(batch * width), gw(width * width), gb(width), gx(batch * width);
  for (auto _ : state) {
    Forward(x, batch, width, w, b, width, y);
    Backward(x, batch, width, w, width, dy, gw, gb, gx);
    benchmark::DoNotOptimize(gx.data());
  }
}

}  // namespace

BENCHMARK(squared_distances<k::serial::squared_distances>)->Name("squared_distances/serial")->Arg(256)->Arg(1024);
BENCHMARK(squared_distances<k::parallel::squared_distances>)->Name("squared_distances/parallel")->Arg(256)->Arg(1024);
BENCHMARK(ap_sweep<k::serial::ap_responsibilities, k::serial::ap_availabilities>)
    ->Name("ap_sweep/serial")->Arg(256)->Arg(1024);
BENCHMARK(ap_sweep<k::parallel::ap_responsibilities, k::parallel::ap_availabilities>)
    ->Name("ap_sweep/parallel")->Arg(256)->Arg(1024);
BENCHMARK(nearest_distance<k::serial::nearest_distance>)->Name("nearest_distance/serial")->Arg(1000)->Arg(10000);
BENCHMARK(nearest_distance<k::parallel::nearest_distance>)->Name("nearest_distance/parallel")->Arg(1000)->Arg(10000);
BENCHMARK(linear_layer<k::serial::linear_forward, k::serial::linear_backward>)
    ->Name("linear_layer/serial")->Arg(128)->Arg(512);
BENCHMARK(linear_layer<k::parallel::linear_forward, k::parallel::linear_backward>)
    ->Name("linear_layer/parallel")->Arg(128)->Arg(512);
BENCHMARK_MAIN();
