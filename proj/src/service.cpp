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

#include "altl/service.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "altl/config.hpp"
#include "altl/engine.hpp"
#include "altl/error.hpp"
#include "altl/random.hpp"
#include "json_util.hpp"

namespace altl {
namespace {

using Json = nlohmann::json;
namespace fs = std::filesystem;

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

void write_file(const fs::path& path, const std::string& contents) {
  // Write then rename so a crash never leaves a half-written file behind.
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::kInternal, "cannot write '" + tmp.string() + "'");
    out << contents;
  }
  fs::rename(tmp, path);
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string metrics_csv(const std::vector<MetricsRecord>& records) {
  std::ostringstream out;
  out << "iteration,n_labeled,lrap,f1_micro,f1_macro,labels_discovered\n";
  for (const auto& r : records) {
    out << r.iteration << ',' << r.n_labeled << ',' << format_g17(r.lrap) << ',' << format_g17(r.f1_micro)
        << ',' << format_g17(r.f1_macro) << ',' << r.labels_discovered << '\n';
  }
  return out.str();
}

std::vector<MetricsRecord> parse_metrics_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kNotFound, "cannot open '" + path.string() + "'");
  std::vector<MetricsRecord> out;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    MetricsRecord r;
    if (std::sscanf(line.c_str(), "%zu,%zu,%lf,%lf,%lf,%zu", &r.iteration, &r.n_labeled, &r.lrap, &r.f1_micro,
                    &r.f1_macro, &r.labels_discovered) != 6) {
      fail(ErrorCode::kParse, "malformed metrics row in '" + path.string() + "'");
    }
    out.push_back(r);
  }
  return out;
}

ClusterResult cluster_result_from_json(const Json& j) {
  ClusterResult r;
  try {
    r.exemplars = j.at("exemplars").get<std::vector<std::size_t>>();
    r.assignment = j.at("assignment").get<std::vector<std::size_t>>();
    r.converged = j.at("converged").get<bool>();
    r.iterations_run = j.at("iterations").get<std::size_t>();
  } catch (const Json::exception& e) {
    fail(ErrorCode::kParse, std::string("malformed cluster file: ") + e.what());
  }
  return r;
}

}  // namespace

std::string_view session_state_name(SessionState state) {
  switch (state) {
    case SessionState::kIdle: return "idle";
    case SessionState::kTraining: return "training";
    case SessionState::kAwaitingLabels: return "awaiting_labels";
  }
  return "idle";
}

SessionState parse_session_state(std::string_view name) {
  for (const auto s : {SessionState::kIdle, SessionState::kTraining, SessionState::kAwaitingLabels}) {
    if (name == session_state_name(s)) return s;
  }
  fail(ErrorCode::kParse, "unknown session state '" + std::string(name) + "'");
}

void SessionConfig::validate() const {
  if (dataset_path.empty()) fail(ErrorCode::kInvalidArgument, "a dataset path is required");
  if (initial_labeled < 1) fail(ErrorCode::kInvalidArgument, "initial_labeled must be at least 1");
  AcquisitionConfig acq;
  acq.batch_size = batch_size;
  acq.lambda = lambda;
  acq.validate();
  train.validate();
  clustering.validate();
  if (!(margin >= 0.0)) fail(ErrorCode::kInvalidArgument, "margin must be non-negative");
}

SessionConfig session_config_from_json(const Json& j, SessionConfig c) {
  detail::require_object(j, "session config",
                         {"dataset", "vocabulary", "initial_labeled", "batch_size", "strategy", "lambda",
                          "model", "train", "clustering", "margin", "seed", "seed_labels"});
  std::string path;
  detail::read(j, "dataset", path);
  if (!path.empty()) c.dataset_path = path;
  if (const auto it = j.find("vocabulary"); it != j.end()) {
    if (it->is_null()) {
      c.vocabulary_path.reset();
    } else {
      std::string v;
      detail::read(j, "vocabulary", v);
      c.vocabulary_path = v;
    }
  }
  detail::read(j, "initial_labeled", c.initial_labeled);
  detail::read(j, "batch_size", c.batch_size);
  if (const auto it = j.find("strategy"); it != j.end() && !it->is_null()) {
    std::string name;
    detail::read(j, "strategy", name);
    c.strategy = parse_strategy(name);
  }
  detail::read(j, "lambda", c.lambda);
  if (const auto it = j.find("model"); it != j.end()) c.model = model_config_from_json(*it, c.model);
  if (const auto it = j.find("train"); it != j.end()) c.train = train_config_from_json(*it, c.train);
  if (const auto it = j.find("clustering"); it != j.end()) c.clustering = ap_config_from_json(*it, c.clustering);
  detail::read(j, "margin", c.margin);
  detail::read(j, "seed", c.seed);
  detail::read(j, "seed_labels", c.seed_labels);
  return c;
}

Json to_json(const SessionConfig& c) {
  Json j{{"dataset", c.dataset_path.string()},
         {"vocabulary", c.vocabulary_path ? Json(c.vocabulary_path->string()) : Json(nullptr)},
         {"initial_labeled", c.initial_labeled},
         {"batch_size", c.batch_size},
         {"strategy", std::string(strategy_name(c.strategy))},
         {"lambda", c.lambda},
         {"model", to_json(c.model)},
         {"train", to_json(c.train)},
         {"clustering", to_json(c.clustering)},
         {"margin", c.margin},
         {"seed", c.seed},
         {"seed_labels", c.seed_labels}};
  return j;
}

Session::Session(Restored, std::string id, SessionConfig config, fs::path directory)
    : id_(std::move(id)), config_(std::move(config)), directory_(std::move(directory)) {
  config_.validate();
  std::optional<LabelVocabulary> vocabulary;
  if (config_.vocabulary_path) vocabulary = load_vocabulary(*config_.vocabulary_path);
  Dataset data = load_dataset(config_.dataset_path, vocabulary);
  examples_ = std::move(data.examples);
  embedding_dim_ = data.embedding_dim;
  feature_dim_ = data.feature_dim;
  // Labels of the file are ground truth the annotator has not supplied.
  for (auto& ex : examples_) ex.labels.reset();
  for (std::size_t i = 0; i < examples_.size(); ++i) index_of_[examples_[i].id] = i;
  if (config_.vocabulary_path) vocabulary_ = std::move(data.vocabulary);
  pool_ = Pool::with_labeled(examples_.size(), {});
}

Session::Session(std::string id, SessionConfig config, std::optional<fs::path> directory)
    : Session(Restored{}, std::move(id), std::move(config), directory.value_or(fs::path())) {
  directory_ = std::move(directory);
  for (const auto& [example_id, names] : config_.seed_labels) {
    const auto it = index_of_.find(example_id);
    if (it == index_of_.end()) fail(ErrorCode::kNotFound, "seed label for unknown example '" + example_id + "'");
    if (names.empty()) fail(ErrorCode::kInvalidArgument, "empty seed label set for '" + example_id + "'");
    LabelSet labels;
    for (const auto& name : names) {
      if (config_.vocabulary_path) {
        const auto found = vocabulary_.find(name);
        if (!found) fail(ErrorCode::kInvalidArgument, "seed label '" + name + "' is not in the vocabulary");
        labels.push_back(*found);
      } else {
        labels.push_back(vocabulary_.intern(name));
      }
    }
    examples_[it->second].labels = normalize_labels(std::move(labels));
    pool_.mark_labeled(it->second);
  }
  if (config_.seed_labels.empty()) {
    Rng rng = Rng::stream(config_.seed, Stream::kSession);
    pending_ = rng.sample_without_replacement(examples_.size(),
                                              std::min(config_.initial_labeled, examples_.size()));
    state_ = SessionState::kAwaitingLabels;
  }
  if (directory_) {
    std::lock_guard lock(mutex_);
    save_locked();
  }
}

Session::~Session() { join_worker(); }

void Session::join_worker() {
  if (worker_.joinable()) worker_.join();
}

SessionStatus Session::status() const {
  std::lock_guard lock(mutex_);
  SessionStatus s;
  s.id = id_;
  s.state = state_;
  s.n_labeled = pool_.labeled().size();
  s.n_unlabeled = pool_.unlabeled().size();
  s.round = round_;
  s.vocabulary_size = vocabulary_.size();
  for (const auto i : pending_) s.pending.push_back(examples_[i].id);
  s.has_model = snapshot_ != nullptr;
  s.last_error = last_error_;
  return s;
}

std::vector<BatchItem> Session::batch() const {
  std::lock_guard lock(mutex_);
  if (state_ != SessionState::kAwaitingLabels) {
    fail(ErrorCode::kFailedPrecondition, "no batch available: session is " + std::string(session_state_name(state_)));
  }
  std::vector<BatchItem> out;
  for (const auto i : pending_) {
    BatchItem item;
    item.id = examples_[i].id;
    item.text = examples_[i].text;
    if (snapshot_) {
      const auto s = scores(snapshot_->model, examples_[i]);
      for (std::size_t k = 0; k < s.size() && k < vocabulary_.size(); ++k) {
        item.scores.emplace_back(vocabulary_.name(k), s[k]);
      }
      std::stable_sort(item.scores.begin(), item.scores.end(),
                       [](const auto& a, const auto& b) { return a.second > b.second; });
    }
    out.push_back(std::move(item));
  }
  return out;
}

std::size_t Session::submit_labels(const std::map<std::string, std::vector<std::string>>& assignments,
                                   bool create_missing) {
  std::lock_guard lock(mutex_);
  if (state_ != SessionState::kAwaitingLabels) {
    fail(ErrorCode::kFailedPrecondition, "cannot accept labels: session is " + std::string(session_state_name(state_)));
  }
  if (assignments.empty()) fail(ErrorCode::kInvalidArgument, "no labels submitted");
  // Validate everything before touching state.
  for (const auto& [example_id, names] : assignments) {
    const auto it = index_of_.find(example_id);
    if (it == index_of_.end() || std::find(pending_.begin(), pending_.end(), it->second) == pending_.end()) {
      fail(ErrorCode::kFailedPrecondition, "example '" + example_id + "' is not in the pending batch");
    }
    if (names.empty()) fail(ErrorCode::kInvalidArgument, "empty label set for '" + example_id + "'");
    for (const auto& name : names) {
      if (name.empty()) fail(ErrorCode::kInvalidArgument, "empty label name for '" + example_id + "'");
      if (!create_missing && !vocabulary_.find(name)) {
        fail(ErrorCode::kInvalidArgument, "unknown label '" + name + "'; add it first or set create_missing");
      }
    }
  }
  for (const auto& [example_id, names] : assignments) {
    const std::size_t i = index_of_.at(example_id);
    LabelSet labels;
    for (const auto& name : names) labels.push_back(vocabulary_.intern(name));
    examples_[i].labels = normalize_labels(std::move(labels));
    pool_.mark_labeled(i);
    pending_.erase(std::find(pending_.begin(), pending_.end(), i));
  }
  pool_.validate(examples_);
  if (pending_.empty()) start_training_locked();
  save_locked();
  return assignments.size();
}

void Session::retrain() {
  std::lock_guard lock(mutex_);
  if (state_ == SessionState::kTraining) fail(ErrorCode::kFailedPrecondition, "session is already training");
  start_training_locked();
  save_locked();
}

void Session::start_training_locked() {
  if (pool_.labeled().empty()) fail(ErrorCode::kFailedPrecondition, "no labeled examples to train on");
  // The previous job has already committed; only the thread handle remains.
  join_worker();
  std::vector<Example> labeled_examples;
  for (const auto i : pool_.labeled()) labeled_examples.push_back(examples_[i]);
  state_ = SessionState::kTraining;
  last_error_.reset();
  worker_ = std::thread(&Session::training_job, this, round_, std::move(labeled_examples), pool_.labeled(),
                        pool_.unlabeled(), std::max<std::size_t>(2, vocabulary_.size()));
}

void Session::training_job(std::size_t round, std::vector<Example> labeled_examples,
                           std::vector<std::size_t> labeled, std::vector<std::size_t> unlabeled,
                           std::size_t n_labels) {
  try {
    ModelConfig model_config = config_.model;
    model_config.embedding_dim = embedding_dim_;
    model_config.feature_dim = feature_dim_;
    model_config.n_labels = n_labels;
    model_config.seed = derive_seed(config_.seed, Stream::kInit, round);
    TrainConfig train_config = config_.train;
    train_config.seed = derive_seed(config_.seed, Stream::kShuffle, round);

    auto snapshot = std::make_shared<Snapshot>();
    snapshot->round = round;
    snapshot->model = train(init(model_config), labeled_examples, train_config);

    // Only embeddings and surface features are read here; labels of
    // examples_ change only while no job runs.
    const Matrix all = feature_matrix(snapshot->model, examples_);
    snapshot->clusters = affinity_propagation(all, config_.clustering);
    snapshot->projection = all.rows >= 2 ? pca_projection(all) : Matrix(all.rows, 2, 0.0);

    std::vector<std::size_t> next;
    const std::size_t b = std::min(config_.batch_size, unlabeled.size());
    if (b > 0) {
      AcquisitionConfig acq;
      acq.strategy = config_.strategy;
      acq.lambda = config_.lambda;
      acq.batch_size = b;
      acq.seed = derive_seed(config_.seed, Stream::kStrategy, round);
      std::vector<std::size_t> positions;
      switch (config_.strategy) {
        case Strategy::kRandom:
          positions = select_batch_random(unlabeled.size(), acq);
          break;
        case Strategy::kMaxEntropy: {
          std::vector<Example> candidates;
          for (const auto i : unlabeled) candidates.push_back(examples_[i]);
          positions = select_batch_maxentropy(score_matrix(snapshot->model, candidates), acq);
          break;
        }
        case Strategy::kCoreset:
          positions = select_batch_coreset(select_rows(all, labeled), select_rows(all, unlabeled), acq);
          break;
        case Strategy::kAltl:
          positions = select_batch_altl(select_rows(all, labeled), select_rows(all, unlabeled),
                                        select_rows(all, snapshot->clusters.exemplars), acq);
          break;
      }
      for (const auto p : positions) next.push_back(unlabeled[p]);
    }

    // No held-out split exists in a live session; report fit on D_L.
    const Matrix s = score_matrix(snapshot->model, labeled_examples);
    std::vector<LabelSet> truth, predicted;
    for (std::size_t i = 0; i < labeled_examples.size(); ++i) {
      truth.push_back(*labeled_examples[i].labels);
      predicted.push_back(predict_labels(s.row(i), config_.margin));
    }
    MetricsRecord record;
    record.iteration = round;
    record.n_labeled = labeled_examples.size();
    record.lrap = lrap(truth, s);
    record.f1_micro = f1(truth, predicted, F1Average::kMicro);
    record.f1_macro = f1(truth, predicted, F1Average::kMacro);
    record.labels_discovered = labels_discovered(labeled_examples);

    std::lock_guard lock(mutex_);
    snapshot_ = std::move(snapshot);
    metrics_.push_back(record);
    pending_ = std::move(next);
    round_ = round + 1;
    state_ = pending_.empty() ? SessionState::kIdle : SessionState::kAwaitingLabels;
    try {
      save_locked();
    } catch (const std::exception& e) {
      last_error_ = e.what();
    }
    settled_.notify_all();
  } catch (const std::exception& e) {
    std::lock_guard lock(mutex_);
    last_error_ = e.what();
    state_ = SessionState::kIdle;
    settled_.notify_all();
  }
}

std::vector<MetricsRecord> Session::metrics() const {
  std::lock_guard lock(mutex_);
  return metrics_;
}

std::vector<ProjectionPoint> Session::projection() const {
  std::lock_guard lock(mutex_);
  if (!snapshot_) fail(ErrorCode::kFailedPrecondition, "no trained model yet");
  const auto cluster_ids = snapshot_->clusters.cluster_ids();
  std::vector<ProjectionPoint> out(examples_.size());
  for (std::size_t i = 0; i < examples_.size(); ++i) {
    out[i].id = examples_[i].id;
    out[i].x = snapshot_->projection(i, 0);
    out[i].y = snapshot_->projection(i, 1);
    out[i].cluster = cluster_ids[i];
    out[i].labeled = pool_.is_labeled(i);
  }
  for (const auto i : pending_) out[i].in_batch = true;
  return out;
}

std::vector<std::string> Session::vocabulary() const {
  std::lock_guard lock(mutex_);
  return vocabulary_.names();
}

std::size_t Session::add_label(const std::string& name) {
  std::lock_guard lock(mutex_);
  if (name.empty()) fail(ErrorCode::kInvalidArgument, "label name must not be empty");
  const std::size_t index = vocabulary_.add(name);
  save_locked();
  return index;
}

bool Session::wait_until_settled(std::chrono::milliseconds timeout) const {
  std::unique_lock lock(mutex_);
  return settled_.wait_for(lock, timeout, [&] { return state_ != SessionState::kTraining; });
}

void Session::save() const {
  std::lock_guard lock(mutex_);
  save_locked();
}

void Session::save_locked() const {
  if (!directory_) return;
  fs::create_directories(*directory_);
  Json pending = Json::array();
  for (const auto i : pending_) pending.push_back(examples_[i].id);
  Json doc{{"format", "altl-session"},
           {"version", 1},
           {"id", id_},
           {"config", to_json(config_)},
           {"state", std::string(session_state_name(state_))},
           {"round", round_},
           {"pending", std::move(pending)},
           {"last_error", last_error_ ? Json(*last_error_) : Json(nullptr)}};
  Json labeled = Json::array();
  for (const auto i : pool_.labeled()) {
    Json names = Json::array();
    for (const auto k : *examples_[i].labels) names.push_back(vocabulary_.name(k));
    labeled.push_back({{"id", examples_[i].id}, {"labels", std::move(names)}});
  }
  Json unlabeled = Json::array();
  for (const auto i : pool_.unlabeled()) unlabeled.push_back(examples_[i].id);
  Json pool{{"labeled", std::move(labeled)}, {"unlabeled", std::move(unlabeled)}};

  std::string vocab;
  for (const auto& name : vocabulary_.names()) vocab += name + "\n";
  write_file(*directory_ / "vocab.txt", vocab);
  write_file(*directory_ / "pool.json", pool.dump(2) + "\n");
  write_file(*directory_ / "metrics.csv", metrics_csv(metrics_));
  if (snapshot_) {
    save_checkpoint(*directory_ / "checkpoint.json.tmp", snapshot_->model);
    fs::rename(*directory_ / "checkpoint.json.tmp", *directory_ / "checkpoint.json");
    write_file(*directory_ / "cluster.json", to_json(snapshot_->clusters).dump() + "\n");
  }
  // Written last: its presence marks a complete session directory.
  write_file(*directory_ / "session.json", doc.dump(2) + "\n");
}

std::unique_ptr<Session> Session::load(const fs::path& directory) {
  const Json doc = read_json_file(directory / "session.json");
  std::unique_ptr<Session> session;
  try {
    if (doc.at("format") != "altl-session" || doc.at("version") != 1) {
      fail(ErrorCode::kParse, "'" + directory.string() + "' is not an altl session");
    }
    SessionConfig config = session_config_from_json(doc.at("config"));
    session.reset(new Session(Restored{}, doc.at("id").get<std::string>(), std::move(config), directory));
    Session& s = *session;
    std::lock_guard lock(s.mutex_);
    const LabelVocabulary vocab = load_vocabulary(directory / "vocab.txt");
    s.vocabulary_ = vocab;
    const Json pool = read_json_file(directory / "pool.json");
    for (const auto& entry : pool.at("labeled")) {
      const auto id = entry.at("id").get<std::string>();
      const auto it = s.index_of_.find(id);
      if (it == s.index_of_.end()) fail(ErrorCode::kParse, "session pool names unknown example '" + id + "'");
      LabelSet labels;
      for (const auto& name : entry.at("labels")) {
        const auto k = s.vocabulary_.find(name.get<std::string>());
        if (!k) fail(ErrorCode::kParse, "session pool uses unknown label");
        labels.push_back(*k);
      }
      s.examples_[it->second].labels = normalize_labels(std::move(labels));
      s.pool_.mark_labeled(it->second);
    }
    s.pool_.validate(s.examples_);
    for (const auto& id : doc.at("pending")) s.pending_.push_back(s.index_of_.at(id.get<std::string>()));
    s.state_ = parse_session_state(doc.at("state").get<std::string>());
    s.round_ = doc.at("round").get<std::size_t>();
    if (!doc.at("last_error").is_null()) s.last_error_ = doc.at("last_error").get<std::string>();
    s.metrics_ = parse_metrics_csv(directory / "metrics.csv");
    if (fs::exists(directory / "checkpoint.json")) {
      auto snapshot = std::make_shared<Snapshot>();
      snapshot->round = s.round_ == 0 ? 0 : s.round_ - 1;
      snapshot->model = load_checkpoint(directory / "checkpoint.json");
      snapshot->clusters = cluster_result_from_json(read_json_file(directory / "cluster.json"));
      const Matrix all = feature_matrix(snapshot->model, s.examples_);
      snapshot->projection = all.rows >= 2 ? pca_projection(all) : Matrix(all.rows, 2, 0.0);
      s.snapshot_ = std::move(snapshot);
    }
    // A job that was running when the session was saved is simply rerun;
    // training is deterministic in (seed, round).
    if (s.state_ == SessionState::kTraining) s.start_training_locked();
  } catch (const Json::exception& e) {
    fail(ErrorCode::kParse, "malformed session in '" + directory.string() + "': " + e.what());
  } catch (const std::out_of_range&) {
    fail(ErrorCode::kParse, "session in '" + directory.string() + "' names unknown examples");
  }
  return session;
}

SessionManager::SessionManager(std::optional<fs::path> state_directory, std::optional<fs::path> default_dataset)
    : state_directory_(std::move(state_directory)), default_dataset_(std::move(default_dataset)) {
  if (!state_directory_) return;
  fs::create_directories(*state_directory_);
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(*state_directory_)) {
    if (entry.is_directory() && fs::exists(entry.path() / "session.json")) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  for (const auto& dir : dirs) {
    std::shared_ptr<Session> s = Session::load(dir);
    const std::string& id = s->id();
    unsigned long long number = 0;
    if (std::sscanf(id.c_str(), "s%llu", &number) == 1) {
      next_id_ = std::max<std::size_t>(next_id_, static_cast<std::size_t>(number) + 1);
    }
    sessions_[id] = std::move(s);
  }
}

std::shared_ptr<Session> SessionManager::create(SessionConfig config) {
  if (config.dataset_path.empty() && default_dataset_) config.dataset_path = *default_dataset_;
  std::string id;
  {
    std::lock_guard lock(mutex_);
    char buf[32];
    std::snprintf(buf, sizeof buf, "s%04zu", next_id_++);
    id = buf;
  }
  std::optional<fs::path> dir;
  if (state_directory_) dir = *state_directory_ / id;
  auto session = std::make_shared<Session>(id, std::move(config), dir);
  std::lock_guard lock(mutex_);
  sessions_[id] = session;
  return session;
}

std::shared_ptr<Session> SessionManager::get(const std::string& id) const {
  std::lock_guard lock(mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) fail(ErrorCode::kNotFound, "no session '" + id + "'");
  return it->second;
}

std::vector<std::string> SessionManager::ids() const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [id, s] : sessions_) out.push_back(id);
  return out;
}

}  // namespace altl
