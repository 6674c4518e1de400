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

#include "altl/config.hpp"

#include <fstream>
#include <string>
#include <string_view>

#include "altl/error.hpp"
#include "json_util.hpp"

namespace altl {

using Json = nlohmann::json;
using detail::read;
using detail::require_object;

SynthConfig synth_config_from_json(const Json& j, SynthConfig c) {
  require_object(j, "synth config",
                 {"n_examples", "n_labels", "embedding_dim", "feature_dim", "zipf_exponent",
                  "n_prototypes", "noise_sigma", "cooccurrence_rate", "seed"});
  read(j, "n_examples", c.n_examples);
  read(j, "n_labels", c.n_labels);
  read(j, "embedding_dim", c.embedding_dim);
  read(j, "feature_dim", c.feature_dim);
  read(j, "zipf_exponent", c.zipf_exponent);
  read(j, "n_prototypes", c.n_prototypes);
  read(j, "noise_sigma", c.noise_sigma);
  read(j, "cooccurrence_rate", c.cooccurrence_rate);
  read(j, "seed", c.seed);
  c.validate();
  return c;
}

APConfig ap_config_from_json(const Json& j, APConfig c) {
  require_object(j, "clustering config", {"damping", "max_iterations", "convergence_window", "preference"});
  read(j, "damping", c.damping);
  read(j, "max_iterations", c.max_iterations);
  read(j, "convergence_window", c.convergence_window);
  if (const auto it = j.find("preference"); it != j.end()) {
    if (it->is_null()) {
      c.preference.reset();
    } else {
      double v = 0.0;
      read(j, "preference", v);
      c.preference = v;
    }
  }
  c.validate();
  return c;
}

TrainConfig train_config_from_json(const Json& j, TrainConfig c) {
  require_object(j, "train config",
                 {"epochs", "learning_rate", "minibatch_size", "beta1", "beta2", "epsilon", "seed"});
  read(j, "epochs", c.epochs);
  read(j, "learning_rate", c.learning_rate);
  read(j, "minibatch_size", c.minibatch_size);
  read(j, "beta1", c.beta1);
  read(j, "beta2", c.beta2);
  read(j, "epsilon", c.epsilon);
  read(j, "seed", c.seed);
  c.validate();
  return c;
}

ModelConfig model_config_from_json(const Json& j, ModelConfig c) {
  require_object(j, "model config",
                 {"embedding_dim", "feature_dim", "stage1_widths", "stage2_widths", "n_labels",
                  "dropout_rate", "seed"});
  read(j, "embedding_dim", c.embedding_dim);
  read(j, "feature_dim", c.feature_dim);
  read(j, "stage1_widths", c.stage1_widths);
  read(j, "stage2_widths", c.stage2_widths);
  read(j, "n_labels", c.n_labels);
  read(j, "dropout_rate", c.dropout_rate);
  read(j, "seed", c.seed);
  return c;
}

AcquisitionConfig acquisition_config_from_json(const Json& j, AcquisitionConfig c) {
  require_object(j, "acquisition config", {"strategy", "lambda", "batch_size", "seed"});
  if (j.contains("strategy")) {
    std::string name;
    read(j, "strategy", name);
    c.strategy = parse_strategy(name);
  }
  read(j, "lambda", c.lambda);
  read(j, "batch_size", c.batch_size);
  read(j, "seed", c.seed);
  c.validate();
  return c;
}

ExperimentConfig experiment_config_from_json(const Json& j, ExperimentConfig c) {
  require_object(j, "experiment config",
                 {"dataset", "vocabulary", "synth", "split_ratio", "initial_labeled", "batch_size",
                  "iterations", "strategy", "lambda", "model", "train", "clustering", "margin",
                  "runs", "base_seed", "fully_supervised"});
  if (j.contains("dataset") && !j["dataset"].is_null()) {
    std::string path;
    read(j, "dataset", path);
    c.dataset_path = path;
  }
  if (j.contains("vocabulary") && !j["vocabulary"].is_null()) {
    std::string path;
    read(j, "vocabulary", path);
    c.vocabulary_path = path;
  }
  if (j.contains("synth")) c.synth = synth_config_from_json(j["synth"], c.synth);
  read(j, "split_ratio", c.split_ratio);
  read(j, "initial_labeled", c.initial_labeled);
  read(j, "batch_size", c.batch_size);
  read(j, "iterations", c.iterations);
  if (j.contains("strategy")) {
    std::string name;
    read(j, "strategy", name);
    c.strategy = parse_strategy(name);
  }
  read(j, "lambda", c.lambda);
  if (j.contains("model")) c.model = model_config_from_json(j["model"], c.model);
  if (j.contains("train")) c.train = train_config_from_json(j["train"], c.train);
  if (j.contains("clustering")) c.clustering = ap_config_from_json(j["clustering"], c.clustering);
  read(j, "margin", c.margin);
  read(j, "runs", c.runs);
  read(j, "base_seed", c.base_seed);
  read(j, "fully_supervised", c.fully_supervised);
  c.validate();
  return c;
}

Json to_json(const SynthConfig& c) {
  return Json{{"n_examples", c.n_examples},       {"n_labels", c.n_labels},
              {"embedding_dim", c.embedding_dim}, {"feature_dim", c.feature_dim},
              {"zipf_exponent", c.zipf_exponent}, {"n_prototypes", c.n_prototypes},
              {"noise_sigma", c.noise_sigma},     {"cooccurrence_rate", c.cooccurrence_rate},
              {"seed", c.seed}};
}

Json to_json(const APConfig& c) {
  return Json{{"damping", c.damping},
              {"max_iterations", c.max_iterations},
              {"convergence_window", c.convergence_window},
              {"preference", c.preference ? Json(*c.preference) : Json(nullptr)}};
}

Json to_json(const TrainConfig& c) {
  return Json{{"epochs", c.epochs}, {"learning_rate", c.learning_rate},
              {"minibatch_size", c.minibatch_size}, {"beta1", c.beta1},
              {"beta2", c.beta2}, {"epsilon", c.epsilon}, {"seed", c.seed}};
}

Json to_json(const ModelConfig& c) {
  return Json{{"embedding_dim", c.embedding_dim}, {"feature_dim", c.feature_dim},
              {"stage1_widths", c.stage1_widths}, {"stage2_widths", c.stage2_widths},
              {"n_labels", c.n_labels},           {"dropout_rate", c.dropout_rate},
              {"seed", c.seed}};
}

Json to_json(const AcquisitionConfig& c) {
  return Json{{"strategy", std::string(strategy_name(c.strategy))},
              {"lambda", c.lambda},
              {"batch_size", c.batch_size},
              {"seed", c.seed}};
}

Json to_json(const ExperimentConfig& c) {
  return Json{{"dataset", c.dataset_path ? Json(c.dataset_path->string()) : Json(nullptr)},
              {"vocabulary", c.vocabulary_path ? Json(c.vocabulary_path->string()) : Json(nullptr)},
              {"synth", to_json(c.synth)},
              {"split_ratio", c.split_ratio},
              {"initial_labeled", c.initial_labeled},
              {"batch_size", c.batch_size},
              {"iterations", c.iterations},
              {"strategy", std::string(strategy_name(c.strategy))},
              {"lambda", c.lambda},
              {"model", to_json(c.model)},
              {"train", to_json(c.train)},
              {"clustering", to_json(c.clustering)},
              {"margin", c.margin},
              {"runs", c.runs},
              {"base_seed", c.base_seed},
              {"fully_supervised", c.fully_supervised}};
}

Json to_json(const ClusterResult& r) {
  return Json{{"exemplars", r.exemplars},
              {"assignment", r.assignment},
              {"converged", r.converged},
              {"iterations", r.iterations_run}};
}

Json to_json(const MetricsRecord& r) {
  return Json{{"iteration", r.iteration},     {"n_labeled", r.n_labeled},
              {"lrap", r.lrap},               {"f1_micro", r.f1_micro},
              {"f1_macro", r.f1_macro},       {"labels_discovered", r.labels_discovered}};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kNotFound, "cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::kParse, "'" + path.string() + "': " + e.what());
  }
}

}  // namespace altl
