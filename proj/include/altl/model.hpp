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

#ifndef ALTL_MODEL_HPP_
#define ALTL_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "altl/data.hpp"
#include "altl/matrix.hpp"

namespace altl {

// Two-stage multi-label classifier:
//
//   embedding -> [stage 1 MLP] -> concat(boolean surface features)
//             -> [stage 2 MLP] -> latent features -> linear -> logits
//
// Hidden layers use ReLU followed by inverted dropout while training. The
// latent features (input of the final linear map) are what acquisition
// strategies measure distances in.
struct ModelConfig {
  std::size_t embedding_dim = 4096;
  std::size_t feature_dim = 256;
  std::vector<std::size_t> stage1_widths{512, 256};
  std::vector<std::size_t> stage2_widths{512, 128};
  std::size_t n_labels = 20;
  double dropout_rate = 0.5;
  std::uint64_t seed = 0;

  // Small widths for laptop-sized experiments.
  static ModelConfig desk_scale(std::size_t embedding_dim, std::size_t feature_dim,
                                std::size_t n_labels);

  void validate() const;
  std::size_t latent_dim() const { return stage2_widths.back(); }

  bool operator==(const ModelConfig&) const = default;
};

struct DenseLayer {
  Matrix weights;  // out x in
  std::vector<double> bias;

  bool operator==(const DenseLayer&) const = default;
};

struct ModelParams {
  ModelConfig config;
  // Stage-1 layers, then stage-2 layers, then the output layer.
  std::vector<DenseLayer> layers;

  std::size_t parameter_count() const;
  bool operator==(const ModelParams&) const = default;
};

struct TrainConfig {
  std::size_t epochs = 200;
  double learning_rate = 0.001;
  std::size_t minibatch_size = 32;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::uint64_t seed = 0;

  void validate() const;
};

// Glorot-uniform weights, zero biases.
ModelParams init(const ModelConfig& config);

std::vector<double> softmax(std::span<const double> logits);

// Cross-entropy between softmax(logits) and the label set normalized to sum
// to one (each true label gets weight 1/|labels|).
double loss(std::span<const double> logits, const LabelSet& labels);

// Mean loss over labeled examples with dropout disabled.
double mean_loss(const ModelParams& params, std::span<const Example> examples);

// Gradient of mean_loss with respect to every parameter, in the same layout
// as `params`. Dropout disabled.
ModelParams loss_gradient(const ModelParams& params, std::span<const Example> examples);

// Adam on shuffled minibatches, starting from `params`.
ModelParams train(ModelParams params, std::span<const Example> examples, const TrainConfig& config);

Matrix logits(const ModelParams& params, std::span<const Example> examples);
std::vector<double> scores(const ModelParams& params, const Example& example);
// One softmax row per example.
Matrix score_matrix(const ModelParams& params, std::span<const Example> examples);

// Labels whose score is within `margin` of the top score. Never empty.
LabelSet predict_labels(std::span<const double> score_vector, double margin = 0.2);

std::vector<double> features(const ModelParams& params, const Example& example);
// One latent feature row per example.
Matrix feature_matrix(const ModelParams& params, std::span<const Example> examples);

// Versioned JSON checkpoint holding the config and every parameter.
void save_checkpoint(const std::filesystem::path& path, const ModelParams& params);
ModelParams load_checkpoint(const std::filesystem::path& path);

}  // namespace altl

#endif  // ALTL_MODEL_HPP_
