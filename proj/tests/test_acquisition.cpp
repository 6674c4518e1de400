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
#include <set>
#include <vector>

#include "altl/error.hpp"
#include "gtest/gtest.h"
#include "oracles/selection_bruteforce.hpp"
#include "test_util.hpp"

namespace altl {
namespace {

using Points = std::vector<std::vector<double>>;

AcquisitionConfig cfg(std::size_t batch, double lambda = 0.1, std::uint64_t seed = 0) {
  AcquisitionConfig c;
  c.batch_size = batch;
  c.lambda = lambda;
  c.seed = seed;
  return c;
}

Matrix m(const Points& p) { return stack_rows(p); }

// Empty matrix with a known width, for "no labeled points".
Matrix none(std::size_t dim) { return Matrix(0, dim); }

struct Instance {
  Points labeled, pool, centroids;
};

Instance random_instance(Rng& rng, std::size_t max_n = 60, std::size_t max_d = 8) {
  const std::size_t d = 1 + rng.below(max_d);
  Instance in;
  in.pool = testing::random_points(rng, 10 + rng.below(max_n - 9), d);
  in.labeled = testing::random_points(rng, rng.below(6), d);
  in.centroids = testing::random_points(rng, 1 + rng.below(5), d);
  return in;
}

Matrix labeled_matrix(const Instance& in) {
  return in.labeled.empty() ? none(in.pool.front().size()) : m(in.labeled);
}

TEST(Altl, CentroidPullBeatsDistance) {
  const Points labeled{{0.0}}, centroid{{2.0}}, pool{{1.5}, {3.5}};
  EXPECT_EQ(select_batch_altl(m(labeled), m(pool), m(centroid), cfg(1, 3.0)), std::vector<std::size_t>{0});
  EXPECT_EQ(select_batch_altl(m(labeled), m(pool), m(centroid), cfg(1, 0.0)), std::vector<std::size_t>{1});
}

TEST(Coreset, HandRun) {
  const Points labeled{{0.0, 0.0}}, pool{{1.0, 0.0}, {3.0, 0.0}, {5.0, 0.0}};
  EXPECT_EQ(select_batch_coreset(m(labeled), m(pool), cfg(2)), (std::vector<std::size_t>{2, 1}));
  EXPECT_EQ(select_batch_coreset(m(labeled), m(pool), cfg(1)), std::vector<std::size_t>{2});
}

TEST(Coreset, CoincidentPoolTakesLowestFirst) {
  const Points labeled{{1.0, 1.0}}, pool{{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}};
  EXPECT_EQ(select_batch_coreset(m(labeled), m(pool), cfg(3)), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Coreset, NoLabeledPointsStartsAtLowestId) {
  const Points pool{{0.0}, {1.0}, {5.0}};
  EXPECT_EQ(select_batch_coreset(none(1), m(pool), cfg(2)), (std::vector<std::size_t>{0, 2}));
}

TEST(Altl, ReducesToCoresetAtLambdaZero) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const Instance in = random_instance(rng, 50);
    const std::size_t b = 1 + rng.below(10);
    EXPECT_EQ(select_batch_altl(labeled_matrix(in), m(in.pool), m(in.centroids), cfg(b, 0.0)),
              select_batch_coreset(labeled_matrix(in), m(in.pool), cfg(b)))
        << "seed " << seed;
  }
}

TEST(Altl, MatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed + 1000);
    const Instance in = random_instance(rng);
    const std::size_t b = 1 + rng.below(10);
    const double lambda = rng.below(4) == 0 ? 0.0 : rng.uniform(0.0, 5.0);
    EXPECT_EQ(select_batch_altl(labeled_matrix(in), m(in.pool), m(in.centroids), cfg(b, lambda)),
              testing::brute_force_selection(in.labeled, in.pool, in.centroids, lambda, b))
        << "seed " << seed;
    EXPECT_EQ(select_batch_coreset(labeled_matrix(in), m(in.pool), cfg(b)),
              testing::brute_force_selection(in.labeled, in.pool, {}, -1.0, b))
        << "seed " << seed;
  }
}

TEST(Altl, ScaleEquivariant) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed + 2000);
    Instance in = random_instance(rng);
    const std::size_t b = 1 + rng.below(10);
    const double lambda = rng.uniform(0.0, 3.0);
    const auto base = select_batch_altl(labeled_matrix(in), m(in.pool), m(in.centroids), cfg(b, lambda));
    for (const double c : {0.25, 4.0, 1024.0}) {
      Instance scaled = in;
      for (auto* set : {&scaled.labeled, &scaled.pool, &scaled.centroids}) {
        for (auto& p : *set) {
          for (auto& v : p) v *= c;
        }
      }
      EXPECT_EQ(select_batch_altl(labeled_matrix(scaled), m(scaled.pool), m(scaled.centroids), cfg(b, lambda)),
                base)
          << "seed " << seed << " scale " << c;
    }
  }
}

TEST(Altl, CoverageDistanceNeverIncreases) {
  Rng rng(31);
  const Instance in = random_instance(rng);
  const auto picks = select_batch_altl(labeled_matrix(in), m(in.pool), m(in.centroids), cfg(10, 0.5));
  Points reference = in.labeled;
  auto coverage = [&](std::size_t u) {
    double best = INFINITY;
    for (const auto& r : reference) best = std::min(best, testing::euclidean(in.pool[u], r));
    return best;
  };
  std::vector<double> previous(in.pool.size());
  for (std::size_t u = 0; u < in.pool.size(); ++u) previous[u] = coverage(u);
  for (const auto pick : picks) {
    reference.push_back(in.pool[pick]);
    for (std::size_t u = 0; u < in.pool.size(); ++u) {
      const double now = coverage(u);
      EXPECT_LE(now, previous[u]);
      previous[u] = now;
    }
  }
}

TEST(Strategies, ReturnDistinctInRangeIds) {
  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const Instance in = random_instance(rng);
    const std::size_t n = in.pool.size();
    const std::size_t b = 1 + rng.below(std::min<std::size_t>(n, 10));
    Matrix probs(n, 4);
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < 4; ++j) sum += probs(i, j) = rng.uniform(0.01, 1.0);
      for (std::size_t j = 0; j < 4; ++j) probs(i, j) /= sum;
    }
    for (const auto& picks : {select_batch_altl(labeled_matrix(in), m(in.pool), m(in.centroids), cfg(b)),
                              select_batch_coreset(labeled_matrix(in), m(in.pool), cfg(b)),
                              select_batch_maxentropy(probs, cfg(b)), select_batch_random(n, cfg(b, 0.1, 7))}) {
      ASSERT_EQ(picks.size(), b);
      EXPECT_EQ(std::set<std::size_t>(picks.begin(), picks.end()).size(), b);
      for (const auto p : picks) EXPECT_LT(p, n);
    }
  }
}

TEST(Strategies, Errors) {
  const Points pool{{0.0}, {1.0}};
  EXPECT_THROW(select_batch_altl(none(1), m(pool), m(pool), cfg(3)), Error);
  EXPECT_THROW(select_batch_altl(none(1), m(pool), none(1), cfg(1)), Error);
  EXPECT_THROW(select_batch_altl(m(Points{{0.0, 1.0}}), m(pool), m(pool), cfg(1)), Error);
  EXPECT_THROW(select_batch_coreset(none(1), m(pool), cfg(3)), Error);
  EXPECT_THROW(select_batch_random(2, cfg(3)), Error);
  EXPECT_THROW(select_batch_altl(none(1), m(pool), m(pool), cfg(1, -1.0)), Error);
  EXPECT_THROW(parse_strategy("bald"), Error);
  EXPECT_EQ(parse_strategy("maxentropy"), Strategy::kMaxEntropy);
}

TEST(MaxEntropy, UniformBeatsPeaked) {
  const Matrix probs = m(Points{{0.97, 0.01, 0.01, 0.01}, {0.25, 0.25, 0.25, 0.25}});
  EXPECT_EQ(select_batch_maxentropy(probs, cfg(1)), std::vector<std::size_t>{1});
  EXPECT_NEAR(entropy(std::vector<double>{0.5, 0.5}), std::log(2.0), 1e-15);
}

TEST(MaxEntropy, TiesGoToLowestId) {
  const std::vector<double> high{0.3, 0.3, 0.4}, low{0.9, 0.05, 0.05};
  const Matrix probs = m(Points{high, low, high});
  EXPECT_EQ(select_batch_maxentropy(probs, cfg(2)), (std::vector<std::size_t>{0, 2}));
}

TEST(MaxEntropy, RejectsInvalidRows) {
  EXPECT_THROW(select_batch_maxentropy(m(Points{{0.5, 0.6}}), cfg(1)), Error);
  EXPECT_THROW(select_batch_maxentropy(m(Points{{std::nan(""), 1.0}}), cfg(1)), Error);
  EXPECT_NO_THROW(select_batch_maxentropy(m(Points{{0.5, 0.5 + 1e-9}}), cfg(1)));
}

TEST(Random, WholePoolAndDeterminism) {
  auto all = select_batch_random(6, cfg(6, 0.1, 3));
  std::sort(all.begin(), all.end());
  EXPECT_EQ(all, (std::vector<std::size_t>{0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(select_batch_random(100, cfg(10, 0.1, 5)), select_batch_random(100, cfg(10, 0.1, 5)));
  EXPECT_NE(select_batch_random(100, cfg(10, 0.1, 5)), select_batch_random(100, cfg(10, 0.1, 6)));
}

TEST(Random, UniformFrequencies) {
  std::vector<double> counts(5, 0.0);
  const int draws = 10000;
  for (int s = 0; s < draws; ++s) counts[select_batch_random(5, cfg(1, 0.1, static_cast<std::uint64_t>(s)))[0]] += 1.0;
  const double sigma = std::sqrt(draws * 0.2 * 0.8);
  for (const double c : counts) EXPECT_NEAR(c, draws * 0.2, 3.0 * sigma);
}

}  // namespace
}  // namespace altl
