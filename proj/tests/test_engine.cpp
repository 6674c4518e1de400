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

#include "altl/engine.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "altl/error.hpp"
#include "gtest/gtest.h"
#include "test_util.hpp"

namespace altl {
namespace {

ExperimentConfig small_experiment(Strategy strategy = Strategy::kAltl) {
  ExperimentConfig c;
  c.synth.n_examples = 150;
  c.synth.n_labels = 8;
  c.synth.embedding_dim = 8;
  c.synth.feature_dim = 6;
  c.synth.n_prototypes = 20;
  c.synth.seed = 3;
  c.initial_labeled = 6;
  c.batch_size = 5;
  c.iterations = 3;
  c.runs = 2;
  c.train.epochs = 15;
  c.strategy = strategy;
  return c;
}

std::vector<Example> ids_only(const std::vector<Example>& examples) {
  std::vector<Example> out = examples;
  for (auto& ex : out) ex.labels.reset();
  return out;
}

TEST(SimulatedOracle, RevealsOnceInOrder) {
  SimulatedOracle oracle({{0}, {1, 2}, {3}});
  const std::vector<std::size_t> ask{2, 0};
  EXPECT_EQ(oracle.reveal(ask), (std::vector<LabelSet>{{3}, {0}}));
  try {
    oracle.reveal(std::vector<std::size_t>{0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFailedPrecondition);
  }
  try {
    oracle.reveal(std::vector<std::size_t>{9});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
  }
  EXPECT_THROW(oracle.reveal(std::vector<std::size_t>{1, 1}), Error);
}

TEST(ActiveLearner, PoolGrowsByBatch) {
  for (const auto strategy : {Strategy::kAltl, Strategy::kCoreset, Strategy::kMaxEntropy, Strategy::kRandom}) {
    const ExperimentConfig config = small_experiment(strategy);
    const TrainTestSplit data = prepare_data(config);
    ActiveLearner learner(config, data.train.examples, make_oracle(data.train.examples), data.test, 1);
    const std::size_t total = learner.pool().size();
    EXPECT_EQ(learner.pool().labeled().size(), 6u);
    for (std::size_t it = 0; it < 2; ++it) {
      const std::size_t before = learner.pool().labeled().size();
      learner.run_iteration();
      EXPECT_EQ(learner.pool().labeled().size(), before + 5);
      EXPECT_EQ(learner.pool().labeled().size() + learner.pool().unlabeled().size(), total);
      EXPECT_EQ(learner.last_selection().size(), 5u);
      for (const auto i : learner.last_selection()) {
        EXPECT_TRUE(learner.pool().is_labeled(i));
        EXPECT_EQ(*learner.examples()[i].labels, *data.train.examples[i].labels);
      }
    }
    // Nothing outside D_L carries a label.
    for (const auto i : learner.pool().unlabeled()) EXPECT_FALSE(learner.examples()[i].labels.has_value());
    EXPECT_EQ(learner.clusters().has_value(), strategy == Strategy::kAltl);
  }
}

TEST(ActiveLearner, AltlAtLambdaZeroFollowsCoreset) {
  ExperimentConfig altl = small_experiment(Strategy::kAltl);
  altl.lambda = 0.0;
  altl.runs = 1;
  ExperimentConfig coreset = small_experiment(Strategy::kCoreset);
  coreset.runs = 1;
  const TrainTestSplit data = prepare_data(altl);
  const auto a = run_experiment(altl, data);
  const auto c = run_experiment(coreset, data);
  EXPECT_EQ(a.runs[0].labeled, c.runs[0].labeled);
  EXPECT_EQ(a.runs[0].records, c.runs[0].records);
}

TEST(ActiveLearner, HiddenLabelsDoNotInfluenceSelection) {
  for (const auto strategy : {Strategy::kAltl, Strategy::kCoreset, Strategy::kMaxEntropy, Strategy::kRandom}) {
    const ExperimentConfig config = small_experiment(strategy);
    const TrainTestSplit data = prepare_data(config);
    ActiveLearner honest(config, data.train.examples, make_oracle(data.train.examples), data.test, 5);

    // Scramble every label the learner has not been given: in the pool
    // examples it receives and in the oracle's answers for unseen points.
    Rng rng(17);
    std::vector<Example> scrambled = data.train.examples;
    std::vector<LabelSet> truth;
    for (std::size_t i = 0; i < scrambled.size(); ++i) {
      if (!honest.pool().is_labeled(i)) scrambled[i].labels = LabelSet{rng.below(8)};
      truth.push_back(*scrambled[i].labels);
    }
    ActiveLearner shuffled(config, scrambled, SimulatedOracle(truth), data.test, 5);
    EXPECT_EQ(shuffled.pool().labeled(), honest.pool().labeled());
    honest.run_iteration();
    shuffled.run_iteration();
    EXPECT_EQ(shuffled.last_selection(), honest.last_selection()) << strategy_name(strategy);
    EXPECT_EQ(shuffled.records(), honest.records());
  }
}

TEST(ActiveLearner, BudgetInfeasible) {
  ExperimentConfig config = small_experiment();
  config.iterations = 100;
  const TrainTestSplit data = prepare_data(config);
  EXPECT_THROW(ActiveLearner(config, data.train.examples, make_oracle(data.train.examples), data.test, 0), Error);
  EXPECT_THROW(run_experiment(config, data), Error);
}

TEST(Experiment, SingleRunNoIterations) {
  ExperimentConfig config = small_experiment();
  config.runs = 1;
  config.iterations = 0;
  const auto result = run_experiment(config);
  ASSERT_EQ(result.runs.size(), 1u);
  ASSERT_EQ(result.runs[0].records.size(), 1u);
  EXPECT_EQ(result.runs[0].records[0].n_labeled, 6u);
  EXPECT_EQ(result.runs[0].records[0].iteration, 0u);
}

TEST(Experiment, RecordsAndAggregate) {
  const ExperimentConfig config = small_experiment();
  const auto result = run_experiment(config);
  ASSERT_EQ(result.runs.size(), 2u);
  for (const auto& run : result.runs) {
    ASSERT_EQ(run.records.size(), config.iterations + 1);
    for (std::size_t k = 0; k < run.records.size(); ++k) {
      const auto& rec = run.records[k];
      EXPECT_EQ(rec.iteration, k);
      EXPECT_EQ(rec.n_labeled, 6 + 5 * k);
      EXPECT_GE(rec.lrap, 0.0);
      EXPECT_LE(rec.lrap, 1.0);
      EXPECT_LE(rec.labels_discovered, 8u);
      if (k > 0) EXPECT_GE(rec.labels_discovered, run.records[k - 1].labels_discovered);
    }
  }
  EXPECT_EQ(result.runs[0].seed, 0u);
  EXPECT_EQ(result.runs[1].seed, 1u);
  ASSERT_EQ(result.aggregate.size(), config.iterations + 1);
  const auto& last = result.aggregate.back();
  const double a = result.runs[0].records.back().lrap, b = result.runs[1].records.back().lrap;
  EXPECT_NEAR(last.lrap.mean, (a + b) / 2.0, 1e-15);
  EXPECT_NEAR(last.lrap.sd, std::abs(a - b) / std::sqrt(2.0), 1e-12);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Experiment, ResultsFilesAreDeterministic) {
  const ExperimentConfig config = small_experiment();
  const auto dir = std::filesystem::temp_directory_path() / "altl_engine_results";
  std::filesystem::remove_all(dir);
  write_results(dir / "a", config, run_experiment(config));
  write_results(dir / "b", config, run_experiment(config));
  const std::string csv = slurp(dir / "a" / "results.csv");
  EXPECT_EQ(csv, slurp(dir / "b" / "results.csv"));
  EXPECT_EQ(slurp(dir / "a" / "aggregate.json"), slurp(dir / "b" / "aggregate.json"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "run,iteration,n_labeled,lrap,f1_micro,f1_macro,labels_discovered");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 2 * 4);
  std::filesystem::remove_all(dir);
}

TEST(Experiment, SplitSharedAcrossRuns) {
  ExperimentConfig config = small_experiment();
  const auto a = prepare_data(config);
  config.strategy = Strategy::kRandom;
  config.lambda = 3.0;
  const auto b = prepare_data(config);
  EXPECT_EQ(a.test, b.test);
  EXPECT_EQ(a.train.size(), 120u);
}

TEST(Experiment, FullySupervisedReference) {
  ExperimentConfig config = small_experiment();
  config.runs = 1;
  config.iterations = 0;
  config.fully_supervised = true;
  const auto result = run_experiment(config);
  ASSERT_TRUE(result.fully_supervised.has_value());
  EXPECT_GT(result.fully_supervised->lrap, result.runs[0].records[0].lrap);
}

TEST(Experiment, Validation) {
  ExperimentConfig config = small_experiment();
  config.runs = 0;
  EXPECT_THROW(config.validate(), Error);
  config = small_experiment();
  config.split_ratio = 1.0;
  EXPECT_THROW(config.validate(), Error);
}

double dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return std::sqrt(s);
}

TEST(Pca, PlanarPointsKeepDistances) {
  Rng rng(1);
  const std::size_t d = 7;
  // Orthonormal pair spanning a plane in R^7, plus an offset.
  auto u = testing::random_vector(rng, d);
  auto v = testing::random_vector(rng, d);
  auto normalize = [](std::vector<double>& x) {
    double n = 0.0;
    for (const double e : x) n += e * e;
    for (auto& e : x) e /= std::sqrt(n);
  };
  normalize(u);
  double dot = 0.0;
  for (std::size_t j = 0; j < d; ++j) dot += u[j] * v[j];
  for (std::size_t j = 0; j < d; ++j) v[j] -= dot * u[j];
  normalize(v);
  const auto offset = testing::random_vector(rng, d, -5.0, 5.0);
  Matrix points(40, d);
  for (std::size_t i = 0; i < 40; ++i) {
    const double a = rng.uniform(-3.0, 3.0), b = rng.uniform(-1.0, 1.0);
    for (std::size_t j = 0; j < d; ++j) points(i, j) = offset[j] + a * u[j] + b * v[j];
  }
  const Matrix p = pca_projection(points);
  ASSERT_EQ(p.rows, 40u);
  ASSERT_EQ(p.cols, 2u);
  for (std::size_t i = 0; i < 40; ++i) {
    for (std::size_t k = i + 1; k < 40; ++k) {
      EXPECT_NEAR(dist(p.row(i), p.row(k)), dist(points.row(i), points.row(k)), 1e-6);
    }
  }
}

TEST(Pca, IdenticalPointsCollapse) {
  Matrix points(5, 3);
  for (std::size_t i = 0; i < 5; ++i) {
    points(i, 0) = 1.0;
    points(i, 1) = -2.0;
    points(i, 2) = 0.5;
  }
  const Matrix p = pca_projection(points);
  for (const double v : p.values) EXPECT_EQ(v, 0.0);
}

TEST(Pca, RankOneHasZeroSecondComponent) {
  Matrix points(6, 3);
  for (std::size_t i = 0; i < 6; ++i) {
    const double t = static_cast<double>(i);
    points(i, 0) = t;
    points(i, 1) = 2.0 * t;
    points(i, 2) = -t;
  }
  const Matrix p = pca_projection(points);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(p(i, 1), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(p(5, 0) - p(0, 0)), 5.0 * std::sqrt(6.0), 1e-9);
}

TEST(Pca, SignConventionIsStable) {
  Rng rng(2);
  Matrix points = stack_rows(testing::random_points(rng, 30, 5));
  const Matrix p = pca_projection(points);
  EXPECT_EQ(pca_projection(points), p);
  // Negating the data flips the principal directions; the convention flips
  // them back, so the projection is negated too.
  Matrix negated = points;
  for (auto& v : negated.values) v = -v;
  const Matrix q = pca_projection(negated);
  for (std::size_t i = 0; i < p.values.size(); ++i) EXPECT_NEAR(q.values[i], -p.values[i], 1e-9);
  EXPECT_THROW(pca_projection(Matrix(1, 3)), Error);
}

}  // namespace
}  // namespace altl
