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

#include "altl/model.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <vector>

#include "altl/error.hpp"
#include "gtest/gtest.h"
#include "oracles/finite_difference.hpp"
#include "test_util.hpp"

namespace altl {
namespace {

ModelConfig tiny_config(std::uint64_t seed = 0) {
  ModelConfig c;
  c.embedding_dim = 3;
  c.feature_dim = 2;
  c.stage1_widths = {4, 3};
  c.stage2_widths = {4, 3};
  c.n_labels = 3;
  c.seed = seed;
  return c;
}

// Glorot init leaves biases at zero; randomize them so every parameter is
// exercised away from the symmetric starting point.
ModelParams randomized(const ModelConfig& config, Rng& rng) {
  ModelParams p = init(config);
  for (auto& layer : p.layers) {
    for (auto& b : layer.bias) b = rng.uniform(-0.5, 0.5);
  }
  return p;
}

TEST(Init, DeterministicBoundedZeroBias) {
  const ModelConfig c = ModelConfig::desk_scale(16, 5, 4);
  const ModelParams a = init(c);
  EXPECT_EQ(a, init(c));
  ModelConfig other = c;
  other.seed = 1;
  EXPECT_NE(init(other), a);
  ASSERT_EQ(a.layers.size(), 5u);
  for (const auto& layer : a.layers) {
    const double bound = std::sqrt(6.0 / static_cast<double>(layer.weights.rows + layer.weights.cols));
    for (const double w : layer.weights.values) EXPECT_LE(std::abs(w), bound);
    for (const double b : layer.bias) EXPECT_EQ(b, 0.0);
  }
  EXPECT_EQ(a.layers[0].weights.cols, 16u);
  EXPECT_EQ(a.layers[2].weights.cols, 32u + 5u);
  EXPECT_EQ(a.layers[4].weights.rows, 4u);
}

TEST(Init, DefaultConfigShapes) {
  ModelConfig c;
  c.n_labels = 7;
  const ModelParams p = init(c);
  ASSERT_EQ(p.layers.size(), 5u);
  EXPECT_EQ(p.layers[0].weights.rows, 512u);
  EXPECT_EQ(p.layers[0].weights.cols, 4096u);
  EXPECT_EQ(p.layers[1].weights.rows, 256u);
  EXPECT_EQ(p.layers[2].weights.cols, 256u + 256u);
  EXPECT_EQ(p.layers[3].weights.rows, 128u);
  EXPECT_EQ(p.config.latent_dim(), 128u);
}

TEST(Config, Validation) {
  ModelConfig c = tiny_config();
  c.n_labels = 1;
  EXPECT_THROW(init(c), Error);
  c = tiny_config();
  c.dropout_rate = 1.0;
  EXPECT_THROW(init(c), Error);
  c = tiny_config();
  c.stage2_widths = {4, 0};
  EXPECT_THROW(init(c), Error);
  TrainConfig t;
  t.epochs = 0;
  EXPECT_THROW(t.validate(), Error);
}

TEST(Loss, UniformLogitsGiveLogC) {
  for (std::size_t c = 2; c <= 9; ++c) {
    const std::vector<double> z(c, 0.0);
    EXPECT_NEAR(loss(z, {0}), std::log(static_cast<double>(c)), 1e-12);
    EXPECT_NEAR(loss(z, {c - 1}), std::log(static_cast<double>(c)), 1e-12);
  }
  EXPECT_NEAR(loss(std::vector<double>(4, 0.0), {0}), 1.3862943611198906, 1e-12);
}

TEST(Loss, TwoOfFour) {
  const std::vector<double> z{std::log(2.0), std::log(2.0), 0.0, 0.0};
  const auto p = softmax(z);
  EXPECT_NEAR(p[0], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(p[2], 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(loss(z, {0, 1}), std::log(3.0), 1e-12);
}

TEST(Loss, SingleLabelIsSoftmaxCrossEntropy) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t c = 2 + rng.below(10);
    const auto z = testing::random_vector(rng, c, -5.0, 5.0);
    const std::size_t y = rng.below(c);
    double sum = 0.0;
    for (const double v : z) sum += std::exp(v);
    const double expected = -std::log(std::exp(z[y]) / sum);
    EXPECT_NEAR(loss(z, {y}), expected, 1e-12);
  }
}

TEST(Loss, ShiftInvariant) {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t c = 2 + rng.below(10);
    const auto z = testing::random_vector(rng, c, -5.0, 5.0);
    LabelSet y{rng.below(c), rng.below(c)};
    y = normalize_labels(y);
    const double shift = rng.uniform(-50.0, 50.0);
    std::vector<double> shifted = z;
    for (auto& v : shifted) v += shift;
    EXPECT_NEAR(loss(z, y), loss(shifted, y), 1e-12);
    const auto p = softmax(z);
    const auto q = softmax(shifted);
    for (std::size_t j = 0; j < c; ++j) EXPECT_NEAR(p[j], q[j], 1e-12);
    EXPECT_EQ(predict_labels(p), predict_labels(q));
  }
}

TEST(Loss, AllLabelsBoundedByLogC) {
  Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t c = 2 + rng.below(8);
    const auto z = testing::random_vector(rng, c, -3.0, 3.0);
    LabelSet all(c);
    std::iota(all.begin(), all.end(), std::size_t{0});
    EXPECT_GE(loss(z, all), std::log(static_cast<double>(c)) - 1e-12);
    const double constant = rng.uniform(-3.0, 3.0);
    EXPECT_NEAR(loss(std::vector<double>(c, constant), all), std::log(static_cast<double>(c)), 1e-12);
  }
}

TEST(Loss, StableForLargeLogits) {
  const std::vector<double> z{1000.0, -1000.0, 0.0};
  EXPECT_NEAR(loss(z, {0}), 0.0, 1e-12);
  EXPECT_NEAR(loss(z, {1}), 2000.0, 1e-9);
  EXPECT_TRUE(std::isfinite(loss(z, {0, 1})));
}

TEST(Loss, Errors) {
  EXPECT_THROW(loss(std::vector<double>{0.0, 1.0}, {}), Error);
  EXPECT_THROW(loss(std::vector<double>{0.0, std::nan("")}, {0}), Error);
  EXPECT_THROW(loss(std::vector<double>{0.0, 1.0}, {2}), Error);
}

TEST(Gradient, TinyNetworkMatchesFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const ModelParams params = randomized(tiny_config(seed), rng);
    const auto examples = testing::random_examples(rng, 1, 3, 2, 3);
    const auto check = testing::check_gradient(params, examples);
    EXPECT_EQ(check.checked, params.parameter_count());
    EXPECT_LT(check.worst_relative_error, 1e-4) << "seed " << seed;
  }
}

TEST(Gradient, MinibatchMatchesFiniteDifferences) {
  Rng rng(77);
  const ModelParams params = randomized(ModelConfig::desk_scale(5, 3, 4), rng);
  ModelParams small = params;
  const auto examples = testing::random_examples(rng, 6, 5, 3, 4);
  EXPECT_LT(testing::check_gradient(small, examples).worst_relative_error, 1e-4);
}

TEST(Gradient, IsMeanOfPerExampleGradients) {
  Rng rng(8);
  const ModelParams params = randomized(tiny_config(), rng);
  const auto examples = testing::random_examples(rng, 4, 3, 2, 3);
  const ModelParams full = loss_gradient(params, examples);
  ModelParams sum = loss_gradient(params, std::span(examples).subspan(0, 1));
  for (std::size_t i = 1; i < 4; ++i) {
    const ModelParams g = loss_gradient(params, std::span(examples).subspan(i, 1));
    for (std::size_t l = 0; l < g.layers.size(); ++l) {
      for (std::size_t k = 0; k < g.layers[l].weights.values.size(); ++k) {
        sum.layers[l].weights.values[k] += g.layers[l].weights.values[k];
      }
      for (std::size_t k = 0; k < g.layers[l].bias.size(); ++k) sum.layers[l].bias[k] += g.layers[l].bias[k];
    }
  }
  for (std::size_t l = 0; l < full.layers.size(); ++l) {
    for (std::size_t k = 0; k < full.layers[l].weights.values.size(); ++k) {
      EXPECT_NEAR(full.layers[l].weights.values[k], sum.layers[l].weights.values[k] / 4.0, 1e-12);
    }
  }
}

std::vector<Example> separable_set(std::size_t n) {
  // Two well separated blobs, one label each.
  Rng rng(21);
  std::vector<Example> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t label = i % 2;
    Example ex;
    ex.id = "s" + std::to_string(i);
    ex.embedding = testing::random_vector(rng, 4, -0.2, 0.2);
    ex.embedding[0] += label == 0 ? -2.0 : 2.0;
    ex.surface_features = {static_cast<std::uint8_t>(label), static_cast<std::uint8_t>(1 - label)};
    ex.labels = LabelSet{label};
    out.push_back(std::move(ex));
  }
  return out;
}

TEST(Train, ZeroLearningRateLeavesParamsUnchanged) {
  const auto data = separable_set(20);
  const ModelParams p = init(ModelConfig::desk_scale(4, 2, 2));
  TrainConfig t;
  t.epochs = 1;
  t.learning_rate = 0.0;
  EXPECT_EQ(train(p, data, t), p);
}

TEST(Train, ReducesLossAndIsDeterministic) {
  const auto data = separable_set(20);
  const ModelParams p = init(ModelConfig::desk_scale(4, 2, 2));
  TrainConfig t;
  t.seed = 9;
  const ModelParams trained = train(p, data, t);
  EXPECT_LT(mean_loss(trained, data), mean_loss(p, data));
  EXPECT_LT(mean_loss(trained, data), 0.1);
  EXPECT_EQ(train(p, data, t), trained);
  t.seed = 10;
  EXPECT_NE(train(p, data, t), trained);
}

TEST(Train, RejectsMismatchedInput) {
  auto data = separable_set(4);
  const ModelParams p = init(ModelConfig::desk_scale(4, 2, 2));
  data[2].embedding.push_back(0.0);
  EXPECT_THROW(train(p, data, TrainConfig{}), Error);
  data = separable_set(4);
  data[1].labels.reset();
  EXPECT_THROW(train(p, data, TrainConfig{}), Error);
  EXPECT_THROW(train(p, std::span<const Example>{}, TrainConfig{}), Error);
}

TEST(Scores, SumToOneAndDeterministic) {
  Rng rng(6);
  const ModelParams p = randomized(ModelConfig::desk_scale(5, 3, 6), rng);
  const auto examples = testing::random_examples(rng, 30, 5, 3, 6);
  const Matrix m = score_matrix(p, examples);
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const auto s = scores(p, examples[i]);
    EXPECT_NEAR(std::accumulate(s.begin(), s.end(), 0.0), 1.0, 1e-12);
    for (std::size_t j = 0; j < s.size(); ++j) {
      EXPECT_GT(s[j], 0.0);
      EXPECT_EQ(s[j], m(i, j));
    }
    EXPECT_EQ(scores(p, examples[i]), s);
  }
}

TEST(Scores, ZeroHeadIsUniform) {
  Rng rng(7);
  ModelParams p = init(ModelConfig::desk_scale(5, 3, 4));
  auto& head = p.layers.back();
  std::fill(head.weights.values.begin(), head.weights.values.end(), 0.0);
  const auto examples = testing::random_examples(rng, 5, 5, 3, 4);
  for (const auto& ex : examples) {
    for (const double s : scores(p, ex)) EXPECT_NEAR(s, 0.25, 1e-15);
  }
}

TEST(Scores, DimensionMismatch) {
  const ModelParams p = init(ModelConfig::desk_scale(5, 3, 4));
  Example ex{"x", std::nullopt, {0.0, 0.0}, {0, 1, 0}, std::nullopt};
  EXPECT_THROW(scores(p, ex), Error);
  EXPECT_THROW(features(p, ex), Error);
}

TEST(PredictLabels, MarginRule) {
  EXPECT_EQ(predict_labels(std::vector<double>{0.5, 0.35, 0.15}, 0.2), (LabelSet{0, 1}));
  EXPECT_EQ(predict_labels(std::vector<double>(5, 0.2), 0.2), (LabelSet{0, 1, 2, 3, 4}));
  EXPECT_EQ(predict_labels(std::vector<double>{0.3, 0.4, 0.3}, 0.0), (LabelSet{1}));
  EXPECT_EQ(predict_labels(std::vector<double>{0.4, 0.2, 0.4}, 0.0), (LabelSet{0, 2}));
}

TEST(Features, LatentWidthAndDeterminism) {
  Rng rng(12);
  const ModelParams p = init(ModelConfig::desk_scale(5, 3, 4));
  auto examples = testing::random_examples(rng, 2, 5, 3, 4);
  examples[1].embedding = examples[0].embedding;
  examples[1].surface_features = examples[0].surface_features;
  const auto f0 = features(p, examples[0]);
  EXPECT_EQ(f0.size(), p.config.latent_dim());
  EXPECT_EQ(features(p, examples[1]), f0);
  const Matrix fm = feature_matrix(p, examples);
  EXPECT_EQ(fm.cols, 32u);
  EXPECT_TRUE(std::equal(f0.begin(), f0.end(), fm.row(0).begin()));
}

TEST(Features, ChangeAfterOneStep) {
  Rng rng(13);
  const ModelParams p = init(ModelConfig::desk_scale(5, 3, 4));
  auto examples = testing::random_examples(rng, 1, 5, 3, 4);
  const auto before_scores = scores(p, examples[0]);
  // Pick the label the untrained model likes least.
  examples[0].labels = LabelSet{static_cast<std::size_t>(
      std::min_element(before_scores.begin(), before_scores.end()) - before_scores.begin())};
  TrainConfig t;
  t.epochs = 1;
  t.learning_rate = 0.01;
  const ModelParams stepped = train(p, examples, t);
  EXPECT_NE(features(stepped, examples[0]), features(p, examples[0]));
}

TEST(Checkpoint, RoundTripIsExact) {
  Rng rng(14);
  const ModelParams p = train(randomized(ModelConfig::desk_scale(5, 3, 4), rng),
                              testing::random_examples(rng, 10, 5, 3, 4), TrainConfig{3});
  const auto path = std::filesystem::temp_directory_path() / "altl_checkpoint_test.json";
  save_checkpoint(path, p);
  EXPECT_EQ(load_checkpoint(path), p);
  std::filesystem::remove(path);
  EXPECT_THROW(load_checkpoint(path), Error);
}

}  // namespace
}  // namespace altl
