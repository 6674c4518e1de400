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
#include <fstream>
#include <numeric>
#include <string>

#include "altl/error.hpp"
#include "altl/kernels.hpp"
#include "altl/random.hpp"
#include "json.hpp"

namespace altl {
namespace {

using Json = nlohmann::json;

constexpr int kCheckpointVersion = 1;

struct Packed {
  Matrix embedding;
  Matrix surface;
  std::vector<const LabelSet*> labels;
};

Packed pack(const ModelConfig& config, std::span<const Example> examples, bool need_labels) {
  Packed p{Matrix(examples.size(), config.embedding_dim), Matrix(examples.size(), config.feature_dim), {}};
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const Example& ex = examples[i];
    if (ex.embedding.size() != config.embedding_dim) {
      fail(ErrorCode::kDimensionMismatch,
           "example '" + ex.id + "': embedding dimension " + std::to_string(ex.embedding.size()) +
               " does not match model input " + std::to_string(config.embedding_dim));
    }
    if (ex.surface_features.size() != config.feature_dim) {
      fail(ErrorCode::kDimensionMismatch,
           "example '" + ex.id + "': feature dimension " + std::to_string(ex.surface_features.size()) +
               " does not match model input " + std::to_string(config.feature_dim));
    }
    std::copy(ex.embedding.begin(), ex.embedding.end(), p.embedding.row(i).begin());
    auto surface_row = p.surface.row(i);
    for (std::size_t k = 0; k < config.feature_dim; ++k) surface_row[k] = ex.surface_features[k];
    if (need_labels) {
      if (!ex.labels || ex.labels->empty()) {
        fail(ErrorCode::kFailedPrecondition, "example '" + ex.id + "' is unlabeled");
      }
      if (ex.labels->back() >= config.n_labels) {
        fail(ErrorCode::kDimensionMismatch, "example '" + ex.id + "' has a label beyond the model output");
      }
      p.labels.push_back(&*ex.labels);
    }
  }
  return p;
}

Packed gather(const Packed& all, std::span<const std::size_t> rows) {
  Packed p{Matrix(rows.size(), all.embedding.cols), Matrix(rows.size(), all.surface.cols), {}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::copy_n(all.embedding.row(rows[i]).begin(), all.embedding.cols, p.embedding.row(i).begin());
    std::copy_n(all.surface.row(rows[i]).begin(), all.surface.cols, p.surface.row(i).begin());
    if (!all.labels.empty()) p.labels.push_back(all.labels[rows[i]]);
  }
  return p;
}

struct Activations {
  std::vector<Matrix> inputs;  // input of each layer
  std::vector<Matrix> pre;     // pre-activation of each hidden layer
  std::vector<Matrix> masks;   // dropout scale of each hidden layer; empty when inference
  Matrix output;               // logits
};

Matrix linear(const DenseLayer& layer, const Matrix& x) {
  Matrix y(x.rows, layer.weights.rows);
  kernels::parallel::linear_forward(x.values, x.rows, x.cols, layer.weights.values, layer.bias,
                                    layer.weights.rows, y.values);
  return y;
}

Matrix concat_columns(const Matrix& left, const Matrix& right) {
  Matrix out(left.rows, left.cols + right.cols);
  for (std::size_t i = 0; i < left.rows; ++i) {
    auto row = out.row(i);
    std::copy_n(left.row(i).begin(), left.cols, row.begin());
    std::copy_n(right.row(i).begin(), right.cols, row.begin() + static_cast<std::ptrdiff_t>(left.cols));
  }
  return out;
}

Activations forward(const ModelParams& params, const Matrix& embedding, const Matrix& surface,
                    Rng* dropout) {
  const std::size_t n_layers = params.layers.size();
  const std::size_t concat_after = params.config.stage1_widths.size() - 1;
  const double rate = params.config.dropout_rate;
  const bool use_dropout = dropout != nullptr && rate > 0.0;

  Activations act;
  act.inputs.push_back(embedding);
  for (std::size_t l = 0; l < n_layers; ++l) {
    Matrix z = linear(params.layers[l], act.inputs.back());
    if (l + 1 == n_layers) {
      act.output = std::move(z);
      break;
    }
    Matrix h = z;
    for (auto& v : h.values) v = std::max(0.0, v);
    if (use_dropout) {
      Matrix mask(h.rows, h.cols);
      const double keep_scale = 1.0 / (1.0 - rate);
      for (std::size_t i = 0; i < mask.values.size(); ++i) {
        mask.values[i] = dropout->uniform() < rate ? 0.0 : keep_scale;
        h.values[i] *= mask.values[i];
      }
      act.masks.push_back(std::move(mask));
    }
    act.pre.push_back(std::move(z));
    act.inputs.push_back(l == concat_after ? concat_columns(h, surface) : std::move(h));
  }
  return act;
}

// d(mean loss)/d(logits) for each row, plus the mean loss itself.
Matrix output_gradient(const Matrix& logit_rows, std::span<const LabelSet* const> labels,
                       double* mean_loss_out) {
  const std::size_t batch = logit_rows.rows;
  Matrix grad(batch, logit_rows.cols);
  double total = 0.0;
  for (std::size_t i = 0; i < batch; ++i) {
    const auto row = logit_rows.row(i);
    total += loss(row, *labels[i]);
    const auto p = softmax(row);
    auto g = grad.row(i);
    const double share = 1.0 / static_cast<double>(labels[i]->size());
    for (std::size_t j = 0; j < g.size(); ++j) g[j] = p[j];
    for (const auto j : *labels[i]) g[j] -= share;
    for (auto& v : g) v /= static_cast<double>(batch);
  }
  if (mean_loss_out) *mean_loss_out = total / static_cast<double>(batch);
  return grad;
}

ModelParams zeros_like(const ModelParams& params) {
  ModelParams out = params;
  for (auto& layer : out.layers) {
    std::fill(layer.weights.values.begin(), layer.weights.values.end(), 0.0);
    std::fill(layer.bias.begin(), layer.bias.end(), 0.0);
  }
  return out;
}

ModelParams backward(const ModelParams& params, const Activations& act, Matrix grad_z) {
  const std::size_t n_layers = params.layers.size();
  ModelParams grads = zeros_like(params);
  for (std::size_t l = n_layers; l-- > 0;) {
    const DenseLayer& layer = params.layers[l];
    const Matrix& x = act.inputs[l];
    DenseLayer& g = grads.layers[l];
    Matrix grad_x;
    if (l > 0) grad_x = Matrix(x.rows, x.cols);
    kernels::parallel::linear_backward(x.values, x.rows, x.cols, layer.weights.values,
                                       layer.weights.rows, grad_z.values, g.weights.values, g.bias,
                                       grad_x.values);
    if (l == 0) break;

    const std::size_t hidden = l - 1;
    const Matrix& pre = act.pre[hidden];
    Matrix grad_h(pre.rows, pre.cols);
    for (std::size_t i = 0; i < pre.rows; ++i) {
      // Past the concat point only the leading columns came from the network.
      std::copy_n(grad_x.row(i).begin(), pre.cols, grad_h.row(i).begin());
    }
    for (std::size_t i = 0; i < grad_h.values.size(); ++i) {
      double v = grad_h.values[i];
      if (!act.masks.empty()) v *= act.masks[hidden].values[i];
      grad_h.values[i] = pre.values[i] > 0.0 ? v : 0.0;
    }
    grad_z = std::move(grad_h);
  }
  return grads;
}

Json layer_to_json(const DenseLayer& layer) {
  return Json{{"rows", layer.weights.rows},
              {"cols", layer.weights.cols},
              {"weights", layer.weights.values},
              {"bias", layer.bias}};
}

}  // namespace

ModelConfig ModelConfig::desk_scale(std::size_t embedding_dim, std::size_t feature_dim,
                                    std::size_t n_labels) {
  ModelConfig c;
  c.embedding_dim = embedding_dim;
  c.feature_dim = feature_dim;
  c.stage1_widths = {64, 32};
  c.stage2_widths = {64, 32};
  c.n_labels = n_labels;
  return c;
}

void ModelConfig::validate() const {
  if (embedding_dim == 0) fail(ErrorCode::kInvalidArgument, "embedding_dim must be positive");
  if (stage1_widths.empty() || stage2_widths.empty()) {
    fail(ErrorCode::kInvalidArgument, "each stage needs at least one layer");
  }
  for (const auto w : stage1_widths) {
    if (w == 0) fail(ErrorCode::kInvalidArgument, "layer widths must be positive");
  }
  for (const auto w : stage2_widths) {
    if (w == 0) fail(ErrorCode::kInvalidArgument, "layer widths must be positive");
  }
  if (n_labels < 2) fail(ErrorCode::kInvalidArgument, "n_labels must be at least 2");
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) {
    fail(ErrorCode::kInvalidArgument, "dropout_rate must lie in [0, 1)");
  }
}

void TrainConfig::validate() const {
  if (epochs < 1) fail(ErrorCode::kInvalidArgument, "epochs must be at least 1");
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    fail(ErrorCode::kInvalidArgument, "learning_rate must be a finite non-negative number");
  }
  if (minibatch_size < 1) fail(ErrorCode::kInvalidArgument, "minibatch_size must be at least 1");
}

std::size_t ModelParams::parameter_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers) n += layer.weights.values.size() + layer.bias.size();
  return n;
}

ModelParams init(const ModelConfig& config) {
  config.validate();
  std::vector<std::size_t> sizes{config.embedding_dim};
  sizes.insert(sizes.end(), config.stage1_widths.begin(), config.stage1_widths.end());
  const std::size_t concat_layer = sizes.size() - 1;
  sizes.insert(sizes.end(), config.stage2_widths.begin(), config.stage2_widths.end());
  sizes.push_back(config.n_labels);

  ModelParams params;
  params.config = config;
  Rng rng = Rng::stream(config.seed, Stream::kInit);
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const std::size_t in = sizes[l] + (l == concat_layer ? config.feature_dim : 0);
    const std::size_t out = sizes[l + 1];
    DenseLayer layer{Matrix(out, in), std::vector<double>(out, 0.0)};
    const double bound = std::sqrt(6.0 / static_cast<double>(in + out));
    for (auto& w : layer.weights.values) w = rng.uniform(-bound, bound);
    params.layers.push_back(std::move(layer));
  }
  return params;
}

std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> out(logits.size());
  if (logits.empty()) return out;
  const double top = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (std::size_t j = 0; j < logits.size(); ++j) {
    out[j] = std::exp(logits[j] - top);
    sum += out[j];
  }
  for (auto& v : out) v /= sum;
  return out;
}

double loss(std::span<const double> logits, const LabelSet& labels) {
  if (labels.empty()) fail(ErrorCode::kInvalidArgument, "loss needs a non-empty label set");
  for (const double v : logits) {
    if (!std::isfinite(v)) fail(ErrorCode::kInvalidArgument, "loss needs finite logits");
  }
  const double top = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (const double v : logits) sum += std::exp(v - top);
  const double log_normalizer = top + std::log(sum);
  double total = 0.0;
  for (const auto j : labels) {
    if (j >= logits.size()) fail(ErrorCode::kInvalidArgument, "label index beyond logits");
    total += log_normalizer - logits[j];
  }
  return total / static_cast<double>(labels.size());
}

double mean_loss(const ModelParams& params, std::span<const Example> examples) {
  if (examples.empty()) fail(ErrorCode::kInvalidArgument, "mean_loss needs examples");
  const Packed p = pack(params.config, examples, true);
  const Activations act = forward(params, p.embedding, p.surface, nullptr);
  double total = 0.0;
  for (std::size_t i = 0; i < act.output.rows; ++i) total += loss(act.output.row(i), *p.labels[i]);
  return total / static_cast<double>(examples.size());
}

ModelParams loss_gradient(const ModelParams& params, std::span<const Example> examples) {
  if (examples.empty()) fail(ErrorCode::kInvalidArgument, "loss_gradient needs examples");
  const Packed p = pack(params.config, examples, true);
  const Activations act = forward(params, p.embedding, p.surface, nullptr);
  return backward(params, act, output_gradient(act.output, p.labels, nullptr));
}

ModelParams train(ModelParams params, std::span<const Example> examples, const TrainConfig& config) {
  config.validate();
  params.config.validate();
  if (examples.empty()) fail(ErrorCode::kInvalidArgument, "training needs at least one example");
  const Packed all = pack(params.config, examples, true);

  ModelParams first_moment = zeros_like(params);
  ModelParams second_moment = zeros_like(params);
  Rng shuffle_rng = Rng::stream(config.seed, Stream::kShuffle);
  Rng dropout_rng = Rng::stream(config.seed, Stream::kDropout);

  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::size_t step = 0;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    shuffle_rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t start = 0; start < order.size(); start += config.minibatch_size) {
      const std::size_t stop = std::min(order.size(), start + config.minibatch_size);
      const Packed batch = gather(all, std::span<const std::size_t>(order).subspan(start, stop - start));
      const Activations act = forward(params, batch.embedding, batch.surface, &dropout_rng);
      const ModelParams grads = backward(params, act, output_gradient(act.output, batch.labels, nullptr));

      ++step;
      const double correction1 = 1.0 - std::pow(config.beta1, static_cast<double>(step));
      const double correction2 = 1.0 - std::pow(config.beta2, static_cast<double>(step));
      auto update = [&](std::vector<double>& w, const std::vector<double>& g, std::vector<double>& m,
                        std::vector<double>& v) {
        for (std::size_t i = 0; i < w.size(); ++i) {
          m[i] = config.beta1 * m[i] + (1.0 - config.beta1) * g[i];
          v[i] = config.beta2 * v[i] + (1.0 - config.beta2) * g[i] * g[i];
          const double m_hat = m[i] / correction1;
          const double v_hat = v[i] / correction2;
          w[i] -= config.learning_rate * m_hat / (std::sqrt(v_hat) + config.epsilon);
        }
      };
      for (std::size_t l = 0; l < params.layers.size(); ++l) {
        update(params.layers[l].weights.values, grads.layers[l].weights.values,
               first_moment.layers[l].weights.values, second_moment.layers[l].weights.values);
        update(params.layers[l].bias, grads.layers[l].bias, first_moment.layers[l].bias,
               second_moment.layers[l].bias);
      }
    }
  }
  return params;
}

Matrix logits(const ModelParams& params, std::span<const Example> examples) {
  const Packed p = pack(params.config, examples, false);
  return forward(params, p.embedding, p.surface, nullptr).output;
}

Matrix score_matrix(const ModelParams& params, std::span<const Example> examples) {
  Matrix out = logits(params, examples);
  for (std::size_t i = 0; i < out.rows; ++i) {
    const auto p = softmax(out.row(i));
    std::copy(p.begin(), p.end(), out.row(i).begin());
  }
  return out;
}

std::vector<double> scores(const ModelParams& params, const Example& example) {
  const Matrix m = score_matrix(params, std::span<const Example>(&example, 1));
  return m.values;
}

LabelSet predict_labels(std::span<const double> score_vector, double margin) {
  if (score_vector.empty()) return {};
  const double top = *std::max_element(score_vector.begin(), score_vector.end());
  LabelSet out;
  for (std::size_t j = 0; j < score_vector.size(); ++j) {
    if (score_vector[j] >= top - margin) out.push_back(j);
  }
  return out;
}

Matrix feature_matrix(const ModelParams& params, std::span<const Example> examples) {
  const Packed p = pack(params.config, examples, false);
  Activations act = forward(params, p.embedding, p.surface, nullptr);
  return std::move(act.inputs.back());
}

std::vector<double> features(const ModelParams& params, const Example& example) {
  return feature_matrix(params, std::span<const Example>(&example, 1)).values;
}

void save_checkpoint(const std::filesystem::path& path, const ModelParams& params) {
  const ModelConfig& c = params.config;
  Json doc;
  doc["format"] = "altl-checkpoint";
  doc["version"] = kCheckpointVersion;
  doc["config"] = Json{{"embedding_dim", c.embedding_dim}, {"feature_dim", c.feature_dim},
                       {"stage1_widths", c.stage1_widths}, {"stage2_widths", c.stage2_widths},
                       {"n_labels", c.n_labels},           {"dropout_rate", c.dropout_rate},
                       {"seed", c.seed}};
  Json layers = Json::array();
  for (const auto& layer : params.layers) layers.push_back(layer_to_json(layer));
  doc["layers"] = std::move(layers);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kNotFound, "cannot write checkpoint '" + path.string() + "'");
  out << doc.dump() << '\n';
}

ModelParams load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kNotFound, "cannot open checkpoint '" + path.string() + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::exception& e) {
    fail(ErrorCode::kParse, std::string("malformed checkpoint: ") + e.what());
  }
  if (doc.value("format", std::string{}) != "altl-checkpoint") {
    fail(ErrorCode::kParse, "not an altl checkpoint");
  }
  if (doc.value("version", 0) != kCheckpointVersion) {
    fail(ErrorCode::kParse, "unsupported checkpoint version");
  }
  try {
    ModelParams params;
    const Json& c = doc.at("config");
    params.config.embedding_dim = c.at("embedding_dim").get<std::size_t>();
    params.config.feature_dim = c.at("feature_dim").get<std::size_t>();
    params.config.stage1_widths = c.at("stage1_widths").get<std::vector<std::size_t>>();
    params.config.stage2_widths = c.at("stage2_widths").get<std::vector<std::size_t>>();
    params.config.n_labels = c.at("n_labels").get<std::size_t>();
    params.config.dropout_rate = c.at("dropout_rate").get<double>();
    params.config.seed = c.at("seed").get<std::uint64_t>();
    params.config.validate();
    const ModelParams shape = init(params.config);
    const Json& layers = doc.at("layers");
    if (layers.size() != shape.layers.size()) fail(ErrorCode::kParse, "checkpoint layer count mismatch");
    for (std::size_t l = 0; l < layers.size(); ++l) {
      DenseLayer layer;
      layer.weights.rows = layers[l].at("rows").get<std::size_t>();
      layer.weights.cols = layers[l].at("cols").get<std::size_t>();
      layer.weights.values = layers[l].at("weights").get<std::vector<double>>();
      layer.bias = layers[l].at("bias").get<std::vector<double>>();
      const DenseLayer& expected = shape.layers[l];
      if (layer.weights.rows != expected.weights.rows || layer.weights.cols != expected.weights.cols ||
          layer.weights.values.size() != expected.weights.values.size() ||
          layer.bias.size() != expected.bias.size()) {
        fail(ErrorCode::kParse, "checkpoint layer " + std::to_string(l) + " has the wrong shape");
      }
      params.layers.push_back(std::move(layer));
    }
    return params;
  } catch (const Json::exception& e) {
    fail(ErrorCode::kParse, std::string("malformed checkpoint: ") + e.what());
  }
}

}  // namespace altl
