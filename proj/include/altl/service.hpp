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

#ifndef ALTL_SERVICE_HPP_
#define ALTL_SERVICE_HPP_

// Annotation sessions: a human plays the oracle. Each session owns a pool,
// a growing vocabulary and the latest trained model; retraining and batch
// selection run on a background thread while reads see the last completed
// snapshot.

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "altl/acquisition.hpp"
#include "altl/clustering.hpp"
#include "altl/data.hpp"
#include "altl/metrics.hpp"
#include "altl/model.hpp"
#include "json.hpp"

namespace altl {

enum class SessionState { kIdle, kTraining, kAwaitingLabels };

std::string_view session_state_name(SessionState state);
SessionState parse_session_state(std::string_view name);

struct SessionConfig {
  std::filesystem::path dataset_path;
  std::optional<std::filesystem::path> vocabulary_path;
  std::size_t initial_labeled = 10;
  std::size_t batch_size = 10;
  Strategy strategy = Strategy::kAltl;
  double lambda = 0.1;
  ModelConfig model = ModelConfig::desk_scale(0, 0, 2);
  TrainConfig train;
  APConfig clustering;
  double margin = 0.2;
  std::uint64_t seed = 0;
  // Labels the annotator already knows, by example id and label name.
  std::map<std::string, std::vector<std::string>> seed_labels;

  void validate() const;
};

SessionConfig session_config_from_json(const nlohmann::json& j, SessionConfig base = {});
nlohmann::json to_json(const SessionConfig& c);

struct BatchItem {
  std::string id;
  std::optional<std::string> text;
  // Label name and current model score, highest first. Empty before the
  // first training.
  std::vector<std::pair<std::string, double>> scores;
};

struct ProjectionPoint {
  std::string id;
  double x = 0.0;
  double y = 0.0;
  std::size_t cluster = 0;
  bool labeled = false;
  bool in_batch = false;
};

struct SessionStatus {
  std::string id;
  SessionState state = SessionState::kIdle;
  std::size_t n_labeled = 0;
  std::size_t n_unlabeled = 0;
  std::size_t round = 0;
  std::size_t vocabulary_size = 0;
  std::vector<std::string> pending;
  bool has_model = false;
  std::optional<std::string> last_error;
};

// Everything produced by one completed training job.
struct Snapshot {
  std::size_t round = 0;
  ModelParams model;
  ClusterResult clusters;
  Matrix projection;  // one 2-D row per pool example
};

class Session {
 public:
  // Loads the dataset and strips every label not given in seed_labels.
  // With seed labels the session starts idle; otherwise it asks for a
  // uniformly drawn bootstrap batch.
  Session(std::string id, SessionConfig config, std::optional<std::filesystem::path> directory = {});
  ~Session();

  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  // Restores a session persisted under `directory`.
  static std::unique_ptr<Session> load(const std::filesystem::path& directory);

  const std::string& id() const { return id_; }
  SessionStatus status() const;
  std::vector<BatchItem> batch() const;
  // Returns the number of accepted assignments. All-or-nothing.
  std::size_t submit_labels(const std::map<std::string, std::vector<std::string>>& assignments,
                            bool create_missing);
  void retrain();
  std::vector<MetricsRecord> metrics() const;
  std::vector<ProjectionPoint> projection() const;
  std::vector<std::string> vocabulary() const;
  std::size_t add_label(const std::string& name);

  // Blocks until no training job is running. Returns false on timeout.
  bool wait_until_settled(std::chrono::milliseconds timeout) const;

  void save() const;

 private:
  struct Restored {};
  Session(Restored, std::string id, SessionConfig config, std::filesystem::path directory);

  void start_training_locked();
  void training_job(std::size_t round, std::vector<Example> labeled_examples, std::vector<std::size_t> labeled,
                    std::vector<std::size_t> unlabeled, std::size_t n_labels);
  void save_locked() const;
  void join_worker();

  std::string id_;
  SessionConfig config_;
  std::optional<std::filesystem::path> directory_;
  std::vector<Example> examples_;
  std::map<std::string, std::size_t> index_of_;
  std::size_t embedding_dim_ = 0;
  std::size_t feature_dim_ = 0;

  mutable std::mutex mutex_;
  mutable std::condition_variable settled_;
  LabelVocabulary vocabulary_;
  Pool pool_;
  std::vector<std::size_t> pending_;
  SessionState state_ = SessionState::kIdle;
  std::size_t round_ = 0;
  std::vector<MetricsRecord> metrics_;
  std::shared_ptr<const Snapshot> snapshot_;
  std::optional<std::string> last_error_;
  std::thread worker_;
};

class SessionManager {
 public:
  // With a state directory, sessions persist there and existing ones are
  // restored on construction.
  explicit SessionManager(std::optional<std::filesystem::path> state_directory = {},
                          std::optional<std::filesystem::path> default_dataset = {});

  std::shared_ptr<Session> create(SessionConfig config);
  std::shared_ptr<Session> get(const std::string& id) const;
  std::vector<std::string> ids() const;
  const std::optional<std::filesystem::path>& default_dataset() const { return default_dataset_; }

 private:
  std::optional<std::filesystem::path> state_directory_;
  std::optional<std::filesystem::path> default_dataset_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::size_t next_id_ = 1;
};

}  // namespace altl

#endif  // ALTL_SERVICE_HPP_
