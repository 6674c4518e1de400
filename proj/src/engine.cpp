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
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "altl/config.hpp"
#include "altl/error.hpp"
#include "altl/random.hpp"

namespace altl {
namespace {

std::uint64_t derive_seed(std::uint64_t seed, Stream purpose, std::uint64_t index) {
  return Rng::stream(seed, purpose, index).next_u64();
}

Matrix select_rows(const Matrix& m, std::span<const std::size_t> rows) {
  Matrix out(rows.size(), m.cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::copy_n(m.row(rows[i]).begin(), m.cols, out.row(i).begin());
  }
  return out;
}

std::vector<LabelSet> truth_of(const Dataset& data) {
  std::vector<LabelSet> truth;
  truth.reserve(data.size());
  for (const auto& ex : data.examples) {
    if (!ex.labels) fail(ErrorCode::kFailedPrecondition, "example '" + ex.id + "' has no ground truth");
    truth.push_back(*ex.labels);
  }
  return truth;
}

EvaluationSummary evaluate(const ModelParams& model, const Dataset& test, double margin) {
  const std::vector<LabelSet> truth = truth_of(test);
  const Matrix scores = score_matrix(model, test.examples);
  std::vector<LabelSet> predicted(scores.rows);
  for (std::size_t i = 0; i < scores.rows; ++i) predicted[i] = predict_labels(scores.row(i), margin);
  return {lrap(truth, scores), f1(truth, predicted, F1Average::kMicro),
          f1(truth, predicted, F1Average::kMacro)};
}

MeanSd mean_sd(const std::vector<double>& values) {
  MeanSd out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (const double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (const double v : values) sq += (v - out.mean) * (v - out.mean);
    out.sd = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.8f", v);
  return buf;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!(split_ratio > 0.0 && split_ratio < 1.0)) {
    fail(ErrorCode::kInvalidArgument, "split_ratio must lie strictly between 0 and 1");
  }
  if (initial_labeled < 1) fail(ErrorCode::kInvalidArgument, "initial_labeled must be at least 1");
  if (batch_size < 1) fail(ErrorCode::kInvalidArgument, "batch_size must be at least 1");
  if (runs < 1) fail(ErrorCode::kInvalidArgument, "runs must be at least 1");
  if (!(lambda >= 0.0)) fail(ErrorCode::kInvalidArgument, "lambda must be non-negative");
  if (!(margin >= 0.0)) fail(ErrorCode::kInvalidArgument, "margin must be non-negative");
  train.validate();
  clustering.validate();
  if (!dataset_path) synth.validate();
}

std::vector<LabelSet> SimulatedOracle::reveal(std::span<const std::size_t> indices) {
  for (const auto i : indices) {
    if (i >= truth_.size()) fail(ErrorCode::kNotFound, "unknown example index " + std::to_string(i));
    if (revealed_[i]) fail(ErrorCode::kFailedPrecondition, "example index " + std::to_string(i) + " is already labeled");
  }
  std::vector<LabelSet> out;
  out.reserve(indices.size());
  for (const auto i : indices) {
    if (revealed_[i]) fail(ErrorCode::kFailedPrecondition, "example index " + std::to_string(i) + " requested twice");
    revealed_[i] = true;
    out.push_back(truth_[i]);
  }
  return out;
}

SimulatedOracle make_oracle(std::span<const Example> labeled_examples) {
  std::vector<LabelSet> truth;
  truth.reserve(labeled_examples.size());
  for (const auto& ex : labeled_examples) {
    if (!ex.labels) fail(ErrorCode::kFailedPrecondition, "example '" + ex.id + "' has no ground truth");
    truth.push_back(*ex.labels);
  }
  return SimulatedOracle(std::move(truth));
}

ActiveLearner::ActiveLearner(const ExperimentConfig& config, std::vector<Example> pool_examples,
                             SimulatedOracle oracle, const Dataset& test, std::uint64_t run_seed)
    : config_(config), examples_(std::move(pool_examples)), oracle_(std::move(oracle)), test_(test),
      seed_(run_seed) {
  if (oracle_.size() != examples_.size()) {
    fail(ErrorCode::kInvalidArgument, "oracle and pool sizes differ");
  }
  for (auto& ex : examples_) ex.labels.reset();
  const std::size_t budget = config_.initial_labeled + config_.iterations * config_.batch_size;
  if (budget > examples_.size()) {
    fail(ErrorCode::kInvalidArgument, "labeling budget " + std::to_string(budget) +
                                          " exceeds the training pool of " +
                                          std::to_string(examples_.size()));
  }
  Rng rng = Rng::stream(seed_, Stream::kInitialPool);
  const auto initial = rng.sample_without_replacement(examples_.size(), config_.initial_labeled);
  pool_ = Pool::with_labeled(examples_.size(), {});
  const auto labels = oracle_.reveal(initial);
  for (std::size_t i = 0; i < initial.size(); ++i) {
    examples_[initial[i]].labels = labels[i];
    pool_.mark_labeled(initial[i]);
  }
  pool_.validate(examples_);
}

void ActiveLearner::retrain_and_evaluate() {
  std::vector<Example> labeled;
  labeled.reserve(pool_.labeled().size());
  for (const auto i : pool_.labeled()) labeled.push_back(examples_[i]);

  ModelConfig model_config = config_.model;
  model_config.embedding_dim = test_.embedding_dim;
  model_config.feature_dim = test_.feature_dim;
  model_config.n_labels = std::max<std::size_t>(2, test_.vocabulary.size());
  model_config.seed = derive_seed(seed_, Stream::kInit, iteration_);
  TrainConfig train_config = config_.train;
  train_config.seed = derive_seed(seed_, Stream::kShuffle, iteration_);
  model_ = train(init(model_config), labeled, train_config);

  const EvaluationSummary eval = evaluate(*model_, test_, config_.margin);
  MetricsRecord record;
  record.iteration = iteration_;
  record.n_labeled = labeled.size();
  record.lrap = eval.lrap;
  record.f1_micro = eval.f1_micro;
  record.f1_macro = eval.f1_macro;
  record.labels_discovered = labels_discovered(labeled);
  records_.push_back(record);
}

std::vector<std::size_t> ActiveLearner::select() {
  const auto& unlabeled = pool_.unlabeled();
  AcquisitionConfig acq;
  acq.strategy = config_.strategy;
  acq.lambda = config_.lambda;
  acq.batch_size = config_.batch_size;
  acq.seed = derive_seed(seed_, Stream::kStrategy, iteration_);

  std::vector<std::size_t> positions;
  switch (config_.strategy) {
    case Strategy::kRandom:
      positions = select_batch_random(unlabeled.size(), acq);
      break;
    case Strategy::kMaxEntropy: {
      std::vector<Example> candidates;
      candidates.reserve(unlabeled.size());
      for (const auto i : unlabeled) candidates.push_back(examples_[i]);
      positions = select_batch_maxentropy(score_matrix(*model_, candidates), acq);
      break;
    }
    case Strategy::kCoreset:
    case Strategy::kAltl: {
      // Latent features of the whole training pool, in pool index order.
      const Matrix all = feature_matrix(*model_, examples_);
      const Matrix labeled = select_rows(all, pool_.labeled());
      const Matrix candidates = select_rows(all, unlabeled);
      if (config_.strategy == Strategy::kCoreset) {
        positions = select_batch_coreset(labeled, candidates, acq);
      } else {
        clusters_ = affinity_propagation(all, config_.clustering);
        const Matrix centers = select_rows(all, clusters_->exemplars);
        positions = select_batch_altl(labeled, candidates, centers, acq);
      }
      break;
    }
  }
  std::vector<std::size_t> picked;
  picked.reserve(positions.size());
  for (const auto p : positions) picked.push_back(unlabeled[p]);
  return picked;
}

void ActiveLearner::run_iteration() {
  if (pool_.unlabeled().size() < config_.batch_size) {
    fail(ErrorCode::kFailedPrecondition, "not enough unlabeled examples for another batch");
  }
  retrain_and_evaluate();
  last_selection_ = select();
  const auto labels = oracle_.reveal(last_selection_);
  for (std::size_t i = 0; i < last_selection_.size(); ++i) {
    examples_[last_selection_[i]].labels = labels[i];
    pool_.mark_labeled(last_selection_[i]);
  }
  pool_.validate(examples_);
  ++iteration_;
}

void ActiveLearner::finish() { retrain_and_evaluate(); }

TrainTestSplit prepare_data(const ExperimentConfig& config) {
  Dataset data;
  if (config.dataset_path) {
    std::optional<LabelVocabulary> vocabulary;
    if (config.vocabulary_path) vocabulary = load_vocabulary(*config.vocabulary_path);
    data = load_dataset(*config.dataset_path, vocabulary);
  } else {
    data = synth_generate(config.synth);
  }
  return split(data, config.split_ratio, config.base_seed);
}

ModelConfig resolve_model_config(const ExperimentConfig& config, const Dataset& data) {
  ModelConfig c = config.model;
  c.embedding_dim = data.embedding_dim;
  c.feature_dim = data.feature_dim;
  c.n_labels = std::max<std::size_t>(2, data.vocabulary.size());
  c.validate();
  return c;
}

EvaluationSummary fully_supervised_reference(const ExperimentConfig& config, const TrainTestSplit& data) {
  ModelConfig model_config = resolve_model_config(config, data.train);
  model_config.seed = derive_seed(config.base_seed, Stream::kInit, 0);
  TrainConfig train_config = config.train;
  train_config.seed = derive_seed(config.base_seed, Stream::kShuffle, 0);
  const ModelParams model = train(init(model_config), data.train.examples, train_config);
  return evaluate(model, data.test, config.margin);
}

ExperimentResult run_experiment(const ExperimentConfig& config, const TrainTestSplit& data) {
  config.validate();
  resolve_model_config(config, data.train);
  ExperimentResult result;
  for (std::size_t r = 0; r < config.runs; ++r) {
    const std::uint64_t run_seed = config.base_seed + r;
    ActiveLearner learner(config, data.train.examples, make_oracle(data.train.examples), data.test,
                          run_seed);
    for (std::size_t it = 0; it < config.iterations; ++it) learner.run_iteration();
    learner.finish();
    RunResult run;
    run.seed = run_seed;
    run.records = learner.records();
    run.final_model = *learner.model();
    run.labeled = learner.pool().labeled();
    result.runs.push_back(std::move(run));
  }
  result.aggregate = aggregate(result.runs);
  if (config.fully_supervised) result.fully_supervised = fully_supervised_reference(config, data);
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  return run_experiment(config, prepare_data(config));
}

std::vector<AggregatePoint> aggregate(std::span<const RunResult> runs) {
  std::vector<AggregatePoint> out;
  if (runs.empty()) return out;
  const std::size_t n_points = runs.front().records.size();
  for (const auto& run : runs) {
    if (run.records.size() != n_points) fail(ErrorCode::kInvalidArgument, "runs have different lengths");
  }
  for (std::size_t it = 0; it < n_points; ++it) {
    std::vector<double> n_labeled, lrap_v, f1_micro_v, f1_macro_v, discovered;
    for (const auto& run : runs) {
      const MetricsRecord& rec = run.records[it];
      n_labeled.push_back(static_cast<double>(rec.n_labeled));
      lrap_v.push_back(rec.lrap);
      f1_micro_v.push_back(rec.f1_micro);
      f1_macro_v.push_back(rec.f1_macro);
      discovered.push_back(static_cast<double>(rec.labels_discovered));
    }
    out.push_back({it, mean_sd(n_labeled), mean_sd(lrap_v), mean_sd(f1_micro_v), mean_sd(f1_macro_v),
                   mean_sd(discovered)});
  }
  return out;
}

std::string results_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "run,iteration,n_labeled,lrap,f1_micro,f1_macro,labels_discovered\n";
  for (std::size_t r = 0; r < result.runs.size(); ++r) {
    for (const auto& rec : result.runs[r].records) {
      out << r << ',' << rec.iteration << ',' << rec.n_labeled << ',' << format_double(rec.lrap) << ','
          << format_double(rec.f1_micro) << ',' << format_double(rec.f1_macro) << ','
          << rec.labels_discovered << '\n';
    }
  }
  return out.str();
}

void write_results(const std::filesystem::path& directory, const ExperimentConfig& config,
                   const ExperimentResult& result) {
  std::filesystem::create_directories(directory);
  {
    std::ofstream csv(directory / "results.csv", std::ios::binary | std::ios::trunc);
    if (!csv) fail(ErrorCode::kNotFound, "cannot write results in '" + directory.string() + "'");
    csv << results_csv(result);
  }
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : result.aggregate) {
    auto pair = [](const MeanSd& m) { return nlohmann::json{{"mean", m.mean}, {"sd", m.sd}}; };
    points.push_back({{"iteration", p.iteration},
                      {"n_labeled", pair(p.n_labeled)},
                      {"lrap", pair(p.lrap)},
                      {"f1_micro", pair(p.f1_micro)},
                      {"f1_macro", pair(p.f1_macro)},
                      {"labels_discovered", pair(p.labels_discovered)}});
  }
  nlohmann::json doc{{"strategy", std::string(strategy_name(config.strategy))},
                     {"lambda", config.lambda},
                     {"runs", result.runs.size()},
                     {"aggregate", std::move(points)},
                     {"config", to_json(config)}};
  if (result.fully_supervised) {
    doc["fully_supervised"] = {{"lrap", result.fully_supervised->lrap},
                               {"f1_micro", result.fully_supervised->f1_micro},
                               {"f1_macro", result.fully_supervised->f1_macro}};
  } else {
    doc["fully_supervised"] = nullptr;
  }
  std::ofstream out(directory / "aggregate.json", std::ios::binary | std::ios::trunc);
  out << doc.dump(2) << '\n';
}

}  // namespace altl
