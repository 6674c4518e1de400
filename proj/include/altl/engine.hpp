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

#ifndef ALTL_ENGINE_HPP_
#define ALTL_ENGINE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "altl/acquisition.hpp"
#include "altl/clustering.hpp"
#include "altl/data.hpp"
#include "altl/metrics.hpp"
#include "altl/model.hpp"

namespace altl {

struct ExperimentConfig {
  // Dataset file; when unset the synthetic generator is used.
  std::optional<std::filesystem::path> dataset_path;
  std::optional<std::filesystem::path> vocabulary_path;
  SynthConfig synth;

  double split_ratio = 0.8;
  std::size_t initial_labeled = 10;
  std::size_t batch_size = 10;
  std::size_t iterations = 10;
  Strategy strategy = Strategy::kAltl;
  double lambda = 0.1;
  // Input and output sizes are filled in from the dataset.
  ModelConfig model = ModelConfig::desk_scale(0, 0, 2);
  TrainConfig train;
  APConfig clustering;
  double margin = 0.2;
  std::size_t runs = 4;
  std::uint64_t base_seed = 0;
  bool fully_supervised = false;

  void validate() const;
};

// Reveals ground truth for training-pool indices, each at most once. The
// learner never holds labels it has not obtained through here.
class SimulatedOracle {
 public:
  explicit SimulatedOracle(std::vector<LabelSet> truth) : truth_(std::move(truth)), revealed_(truth_.size(), false) {}

  // Throws kNotFound for an unknown index and kFailedPrecondition for one
  // that was already revealed.
  std::vector<LabelSet> reveal(std::span<const std::size_t> indices);

  std::size_t size() const { return truth_.size(); }

 private:
  std::vector<LabelSet> truth_;
  std::vector<bool> revealed_;
};

SimulatedOracle make_oracle(std::span<const Example> labeled_examples);

// One simulated active-learning trajectory.
class ActiveLearner {
 public:
  // `pool_examples` are the training examples; any labels on them are
  // discarded. The initial labeled set is drawn uniformly from `run_seed`.
  ActiveLearner(const ExperimentConfig& config, std::vector<Example> pool_examples,
                SimulatedOracle oracle, const Dataset& test, std::uint64_t run_seed);

  // Retrain on the labeled set, record test metrics, then select a batch,
  // query the oracle and move the batch into the labeled set.
  void run_iteration();
  // Retrain and record metrics without selecting (closes a trajectory).
  void finish();

  const Pool& pool() const { return pool_; }
  std::span<const Example> examples() const { return examples_; }
  const std::vector<MetricsRecord>& records() const { return records_; }
  const std::optional<ModelParams>& model() const { return model_; }
  const std::optional<ClusterResult>& clusters() const { return clusters_; }
  // Training-pool indices selected by the latest run_iteration, in order.
  const std::vector<std::size_t>& last_selection() const { return last_selection_; }
  std::size_t iteration() const { return iteration_; }

 private:
  void retrain_and_evaluate();
  std::vector<std::size_t> select();

  ExperimentConfig config_;
  std::vector<Example> examples_;
  SimulatedOracle oracle_;
  const Dataset& test_;
  std::uint64_t seed_;
  Pool pool_;
  std::size_t iteration_ = 0;
  std::optional<ModelParams> model_;
  std::optional<ClusterResult> clusters_;
  std::vector<MetricsRecord> records_;
  std::vector<std::size_t> last_selection_;
};

struct RunResult {
  std::uint64_t seed = 0;
  std::vector<MetricsRecord> records;
  ModelParams final_model;
  std::vector<std::size_t> labeled;  // final labeled indices, in labeling order
};

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

struct AggregatePoint {
  std::size_t iteration = 0;
  MeanSd n_labeled;
  MeanSd lrap;
  MeanSd f1_micro;
  MeanSd f1_macro;
  MeanSd labels_discovered;
};

struct EvaluationSummary {
  double lrap = 0.0;
  double f1_micro = 0.0;
  double f1_macro = 0.0;
};

struct ExperimentResult {
  std::vector<RunResult> runs;
  std::vector<AggregatePoint> aggregate;
  std::optional<EvaluationSummary> fully_supervised;
};

// Loads or synthesizes the dataset named by the config and splits it with
// base_seed, so every run and strategy sees the same train/test partition.
TrainTestSplit prepare_data(const ExperimentConfig& config);

ModelConfig resolve_model_config(const ExperimentConfig& config, const Dataset& data);

ExperimentResult run_experiment(const ExperimentConfig& config);
ExperimentResult run_experiment(const ExperimentConfig& config, const TrainTestSplit& data);

// Trains one model on the whole (fully labeled) training set.
EvaluationSummary fully_supervised_reference(const ExperimentConfig& config, const TrainTestSplit& data);

// Per-iteration mean and sample standard deviation over runs.
std::vector<AggregatePoint> aggregate(std::span<const RunResult> runs);

// results.csv (one row per run x iteration) and aggregate.json.
void write_results(const std::filesystem::path& directory, const ExperimentConfig& config,
                   const ExperimentResult& result);
std::string results_csv(const ExperimentResult& result);

// Mean-centered projection onto the top two principal directions. Each
// direction's largest-magnitude coordinate is made positive.
Matrix pca_projection(const Matrix& points);

}  // namespace altl

#endif  // ALTL_ENGINE_HPP_
