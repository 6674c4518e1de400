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

#include "altl/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <unordered_set>

#include "altl/error.hpp"
#include "altl/random.hpp"
#include "json.hpp"

namespace altl {
namespace {

using Json = nlohmann::ordered_json;

std::string at_line(std::size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

Example decode_example(const Json& record, std::size_t line, LabelVocabulary& vocabulary,
                       bool grow_vocabulary) {
  if (!record.is_object()) fail(ErrorCode::kParse, at_line(line, "record is not an object"));
  Example ex;
  const auto id = record.find("id");
  if (id == record.end() || !id->is_string()) {
    fail(ErrorCode::kParse, at_line(line, "missing string field 'id'"));
  }
  ex.id = id->get<std::string>();

  if (const auto text = record.find("text"); text != record.end() && !text->is_null()) {
    if (!text->is_string()) fail(ErrorCode::kParse, at_line(line, "'text' must be a string or null"));
    ex.text = text->get<std::string>();
  }

  const auto embedding = record.find("embedding");
  if (embedding == record.end() || !embedding->is_array()) {
    fail(ErrorCode::kParse, at_line(line, "missing array field 'embedding'"));
  }
  ex.embedding.reserve(embedding->size());
  for (const auto& v : *embedding) {
    if (!v.is_number()) fail(ErrorCode::kParse, at_line(line, "non-numeric embedding entry"));
    ex.embedding.push_back(v.get<double>());
  }

  const auto features = record.find("features");
  if (features == record.end() || !features->is_array()) {
    fail(ErrorCode::kParse, at_line(line, "missing array field 'features'"));
  }
  ex.surface_features.reserve(features->size());
  for (const auto& v : *features) {
    if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1)) {
      fail(ErrorCode::kParse, at_line(line, "features must be 0 or 1"));
    }
    ex.surface_features.push_back(static_cast<std::uint8_t>(v.get<int>()));
  }

  if (const auto labels = record.find("labels"); labels != record.end() && !labels->is_null()) {
    if (!labels->is_array()) fail(ErrorCode::kParse, at_line(line, "'labels' must be an array or null"));
    LabelSet set;
    for (const auto& v : *labels) {
      if (!v.is_string()) fail(ErrorCode::kParse, at_line(line, "label names must be strings"));
      const auto name = v.get<std::string>();
      if (const auto index = vocabulary.find(name)) {
        set.push_back(*index);
      } else if (grow_vocabulary) {
        set.push_back(vocabulary.add(name));
      } else {
        fail(ErrorCode::kInvalidArgument, at_line(line, "unknown label '" + name + "'"));
      }
    }
    ex.labels = normalize_labels(std::move(set));
  }
  return ex;
}

Json encode_record(const Example& example, const LabelVocabulary& vocabulary) {
  Json record;
  record["id"] = example.id;
  record["text"] = example.text ? Json(*example.text) : Json(nullptr);
  record["embedding"] = example.embedding;
  Json features = Json::array();
  for (const auto bit : example.surface_features) features.push_back(static_cast<int>(bit));
  record["features"] = std::move(features);
  if (example.labels) {
    Json names = Json::array();
    for (const auto index : *example.labels) names.push_back(vocabulary.name(index));
    record["labels"] = std::move(names);
  } else {
    record["labels"] = nullptr;
  }
  return record;
}

// Probability vector proportional to rank^-exponent for ranks 1..n.
std::vector<double> zipf_weights(std::size_t n, double exponent) {
  std::vector<double> weights(n);
  for (std::size_t i = 0; i < n; ++i) {
    weights[i] = std::pow(static_cast<double>(i + 1), -exponent);
  }
  return weights;
}

std::string padded_name(std::string_view prefix, std::size_t value, std::size_t count) {
  const std::size_t width = std::max<std::size_t>(2, std::to_string(count > 0 ? count - 1 : 0).size());
  std::string digits = std::to_string(value);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return std::string(prefix) + digits;
}

}  // namespace

LabelSet normalize_labels(LabelSet labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

LabelVocabulary::LabelVocabulary(std::vector<std::string> names) {
  for (auto& name : names) add(std::move(name));
}

const std::string& LabelVocabulary::name(std::size_t index) const {
  if (index >= names_.size()) {
    fail(ErrorCode::kInvalidArgument, "label index " + std::to_string(index) + " out of range");
  }
  return names_[index];
}

std::optional<std::size_t> LabelVocabulary::find(std::string_view name) const {
  const auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t LabelVocabulary::add(std::string name) {
  if (name.empty()) fail(ErrorCode::kInvalidArgument, "label name must not be empty");
  if (index_.contains(name)) fail(ErrorCode::kAlreadyExists, "label '" + name + "' already exists");
  const std::size_t index = names_.size();
  index_.emplace(name, index);
  names_.push_back(std::move(name));
  return index;
}

std::size_t LabelVocabulary::intern(std::string name) {
  if (const auto index = find(name)) return *index;
  return add(std::move(name));
}

void Dataset::validate() const {
  std::unordered_set<std::string_view> seen;
  for (const auto& ex : examples) {
    if (!seen.insert(ex.id).second) fail(ErrorCode::kInvalidArgument, "duplicate id '" + ex.id + "'");
    if (ex.embedding.size() != embedding_dim) {
      fail(ErrorCode::kDimensionMismatch,
           "example '" + ex.id + "': embedding has " + std::to_string(ex.embedding.size()) +
               " entries, expected " + std::to_string(embedding_dim));
    }
    if (ex.surface_features.size() != feature_dim) {
      fail(ErrorCode::kDimensionMismatch,
           "example '" + ex.id + "': features have " + std::to_string(ex.surface_features.size()) +
               " entries, expected " + std::to_string(feature_dim));
    }
    for (const double v : ex.embedding) {
      if (!std::isfinite(v)) fail(ErrorCode::kInvalidArgument, "example '" + ex.id + "': non-finite embedding");
    }
    for (const auto bit : ex.surface_features) {
      if (bit > 1) fail(ErrorCode::kInvalidArgument, "example '" + ex.id + "': feature not boolean");
    }
    if (ex.labels) {
      if (ex.labels->empty()) fail(ErrorCode::kInvalidArgument, "example '" + ex.id + "': empty label set");
      for (const auto label : *ex.labels) {
        if (label >= vocabulary.size()) {
          fail(ErrorCode::kInvalidArgument, "example '" + ex.id + "': label index out of range");
        }
      }
    }
  }
}

Dataset load_dataset(const std::filesystem::path& path,
                     const std::optional<LabelVocabulary>& vocabulary) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kNotFound, "cannot open dataset '" + path.string() + "'");

  Dataset dataset;
  const bool grow = !vocabulary.has_value();
  if (vocabulary) dataset.vocabulary = *vocabulary;

  std::unordered_set<std::string> ids;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json record;
    try {
      record = Json::parse(text);
    } catch (const Json::parse_error& e) {
      fail(ErrorCode::kParse, at_line(line, std::string("malformed record: ") + e.what()));
    }
    Example ex = decode_example(record, line, dataset.vocabulary, grow);
    if (dataset.examples.empty()) {
      dataset.embedding_dim = ex.embedding.size();
      dataset.feature_dim = ex.surface_features.size();
    }
    if (ex.embedding.size() != dataset.embedding_dim) {
      fail(ErrorCode::kDimensionMismatch,
           at_line(line, "example '" + ex.id + "' has embedding dimension " +
                             std::to_string(ex.embedding.size()) + ", expected " +
                             std::to_string(dataset.embedding_dim)));
    }
    if (ex.surface_features.size() != dataset.feature_dim) {
      fail(ErrorCode::kDimensionMismatch,
           at_line(line, "example '" + ex.id + "' has feature dimension " +
                             std::to_string(ex.surface_features.size()) + ", expected " +
                             std::to_string(dataset.feature_dim)));
    }
    if (!ids.insert(ex.id).second) {
      fail(ErrorCode::kInvalidArgument, at_line(line, "duplicate id '" + ex.id + "'"));
    }
    dataset.examples.push_back(std::move(ex));
  }
  if (dataset.examples.empty()) fail(ErrorCode::kInvalidArgument, "empty dataset");
  dataset.validate();
  return dataset;
}

std::string encode_example(const Example& example, const LabelVocabulary& vocabulary) {
  return encode_record(example, vocabulary).dump();
}

void save_dataset(const std::filesystem::path& path, const Dataset& dataset) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kNotFound, "cannot write dataset '" + path.string() + "'");
  for (const auto& ex : dataset.examples) out << encode_example(ex, dataset.vocabulary) << '\n';
  if (!out) fail(ErrorCode::kInternal, "failed writing '" + path.string() + "'");
}

LabelVocabulary load_vocabulary(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kNotFound, "cannot open vocabulary '" + path.string() + "'");
  LabelVocabulary vocabulary;
  std::string name;
  while (std::getline(in, name)) {
    if (!name.empty() && name.back() == '\r') name.pop_back();
    if (name.empty()) continue;
    vocabulary.add(name);
  }
  return vocabulary;
}

void save_vocabulary(const std::filesystem::path& path, const LabelVocabulary& vocabulary) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kNotFound, "cannot write vocabulary '" + path.string() + "'");
  for (const auto& name : vocabulary.names()) out << name << '\n';
}

TrainTestSplit split(const Dataset& dataset, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    fail(ErrorCode::kInvalidArgument, "split ratio must lie strictly between 0 and 1");
  }
  const std::size_t n = dataset.size();
  const auto n_train = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n)));
  Rng rng = Rng::stream(seed, Stream::kSplit);
  std::vector<std::size_t> train_idx = rng.sample_without_replacement(n, n_train);
  std::sort(train_idx.begin(), train_idx.end());

  TrainTestSplit out;
  for (Dataset* part : {&out.train, &out.test}) {
    part->vocabulary = dataset.vocabulary;
    part->embedding_dim = dataset.embedding_dim;
    part->feature_dim = dataset.feature_dim;
  }
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (next < train_idx.size() && train_idx[next] == i) {
      out.train.examples.push_back(dataset.examples[i]);
      ++next;
    } else {
      out.test.examples.push_back(dataset.examples[i]);
    }
  }
  return out;
}

void SynthConfig::validate() const {
  if (n_examples == 0) fail(ErrorCode::kInvalidArgument, "n_examples must be positive");
  if (n_labels == 0) fail(ErrorCode::kInvalidArgument, "n_labels must be positive");
  if (embedding_dim == 0) fail(ErrorCode::kInvalidArgument, "embedding_dim must be positive");
  if (n_prototypes == 0 || n_prototypes > n_examples) {
    fail(ErrorCode::kInvalidArgument, "n_prototypes must be in [1, n_examples]");
  }
  if (!(zipf_exponent > 0.0)) fail(ErrorCode::kInvalidArgument, "zipf_exponent must be positive");
  if (!(noise_sigma >= 0.0)) fail(ErrorCode::kInvalidArgument, "noise_sigma must be non-negative");
  if (!(cooccurrence_rate >= 0.0 && cooccurrence_rate <= 1.0)) {
    fail(ErrorCode::kInvalidArgument, "cooccurrence_rate must be in [0, 1]");
  }
}

Dataset synth_generate(const SynthConfig& config) {
  config.validate();
  constexpr std::size_t kMaxExtraLabels = 3;
  constexpr double kFeatureFlipRate = 0.05;

  Rng rng = Rng::stream(config.seed, Stream::kSynth);
  const auto label_weights = zipf_weights(config.n_labels, config.zipf_exponent);
  const auto prototype_weights = zipf_weights(config.n_prototypes, config.zipf_exponent);

  std::vector<std::vector<double>> prototypes(config.n_prototypes);
  std::vector<LabelSet> prototype_labels(config.n_prototypes);
  for (std::size_t p = 0; p < config.n_prototypes; ++p) {
    prototypes[p].resize(config.embedding_dim);
    for (auto& v : prototypes[p]) v = rng.uniform(-1.0, 1.0);
    LabelSet labels{rng.discrete(label_weights)};
    for (std::size_t slot = 0; slot < kMaxExtraLabels; ++slot) {
      if (rng.uniform() < config.cooccurrence_rate) labels.push_back(rng.discrete(label_weights));
    }
    prototype_labels[p] = normalize_labels(std::move(labels));
  }

  Dataset dataset;
  dataset.embedding_dim = config.embedding_dim;
  dataset.feature_dim = config.feature_dim;
  for (std::size_t k = 0; k < config.n_labels; ++k) {
    dataset.vocabulary.add(padded_name("label_", k, config.n_labels));
  }
  dataset.examples.reserve(config.n_examples);
  for (std::size_t i = 0; i < config.n_examples; ++i) {
    const std::size_t p = rng.discrete(prototype_weights);
    Example ex;
    ex.id = padded_name("ex", i, config.n_examples);
    ex.embedding = prototypes[p];
    for (auto& v : ex.embedding) v += config.noise_sigma * rng.normal();
    const LabelSet& labels = prototype_labels[p];
    ex.surface_features.resize(config.feature_dim);
    for (std::size_t k = 0; k < config.feature_dim; ++k) {
      const bool present = std::binary_search(labels.begin(), labels.end(), k);
      const bool flip = rng.uniform() < kFeatureFlipRate;
      ex.surface_features[k] = static_cast<std::uint8_t>(present != flip);
    }
    ex.labels = labels;
    dataset.examples.push_back(std::move(ex));
  }
  return dataset;
}

std::vector<std::size_t> label_frequencies(const Dataset& dataset) {
  if (dataset.examples.empty()) fail(ErrorCode::kInvalidArgument, "empty dataset");
  std::vector<std::size_t> counts(dataset.vocabulary.size(), 0);
  for (const auto& ex : dataset.examples) {
    if (!ex.labels) fail(ErrorCode::kFailedPrecondition, "example '" + ex.id + "' is unlabeled");
    for (const auto label : *ex.labels) {
      if (label >= counts.size()) fail(ErrorCode::kInvalidArgument, "label index out of range");
      ++counts[label];
    }
  }
  return counts;
}

Pool::Pool(std::vector<std::size_t> labeled, std::vector<std::size_t> unlabeled)
    : labeled_(std::move(labeled)), unlabeled_(std::move(unlabeled)) {}

Pool Pool::with_labeled(std::size_t n, std::span<const std::size_t> labeled) {
  std::vector<bool> taken(n, false);
  std::vector<std::size_t> lab;
  for (const auto i : labeled) {
    if (i >= n) fail(ErrorCode::kInvalidArgument, "labeled index out of range");
    if (taken[i]) fail(ErrorCode::kInvalidArgument, "duplicate labeled index");
    taken[i] = true;
    lab.push_back(i);
  }
  std::vector<std::size_t> unl;
  for (std::size_t i = 0; i < n; ++i) {
    if (!taken[i]) unl.push_back(i);
  }
  return Pool(std::move(lab), std::move(unl));
}

bool Pool::is_labeled(std::size_t index) const {
  return std::find(labeled_.begin(), labeled_.end(), index) != labeled_.end();
}

bool Pool::is_unlabeled(std::size_t index) const {
  return std::find(unlabeled_.begin(), unlabeled_.end(), index) != unlabeled_.end();
}

void Pool::mark_labeled(std::size_t index) {
  const auto it = std::find(unlabeled_.begin(), unlabeled_.end(), index);
  if (it == unlabeled_.end()) {
    fail(ErrorCode::kFailedPrecondition, "index " + std::to_string(index) + " is not unlabeled");
  }
  unlabeled_.erase(it);
  labeled_.push_back(index);
}

void Pool::validate(std::span<const Example> examples) const {
  std::vector<int> seen(examples.size(), 0);
  for (const auto i : labeled_) {
    if (i >= examples.size()) fail(ErrorCode::kInternal, "pool index out of range");
    if (seen[i]++) fail(ErrorCode::kInternal, "pool index repeated");
    if (!examples[i].labels) fail(ErrorCode::kInternal, "labeled example '" + examples[i].id + "' has no labels");
  }
  for (const auto i : unlabeled_) {
    if (i >= examples.size()) fail(ErrorCode::kInternal, "pool index out of range");
    if (seen[i]++) fail(ErrorCode::kInternal, "pool index repeated or in both sides");
  }
  if (labeled_.size() + unlabeled_.size() != examples.size()) {
    fail(ErrorCode::kInternal, "pool does not cover the training set");
  }
}

}  // namespace altl
