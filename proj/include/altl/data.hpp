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

#ifndef ALTL_DATA_HPP_
#define ALTL_DATA_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace altl {

// Sorted, duplicate-free label indices into a LabelVocabulary.
using LabelSet = std::vector<std::size_t>;

// Sorts and deduplicates in place; returns the argument for chaining.
LabelSet normalize_labels(LabelSet labels);

struct Example {
  std::string id;
  std::optional<std::string> text;
  std::vector<double> embedding;
  // Boolean surface features stored as 0/1 bytes.
  std::vector<std::uint8_t> surface_features;
  std::optional<LabelSet> labels;

  bool operator==(const Example&) const = default;
};

// Ordered label names. Append-only: an existing label never changes index,
// so label sets recorded earlier stay valid as the vocabulary grows.
class LabelVocabulary {
 public:
  LabelVocabulary() = default;
  explicit LabelVocabulary(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t index) const;
  std::optional<std::size_t> find(std::string_view name) const;

  // Appends a new label; throws kAlreadyExists for a duplicate name.
  std::size_t add(std::string name);
  // Index of `name`, appending it first when missing.
  std::size_t intern(std::string name);

  bool operator==(const LabelVocabulary& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct Dataset {
  LabelVocabulary vocabulary;
  std::vector<Example> examples;
  std::size_t embedding_dim = 0;
  std::size_t feature_dim = 0;

  std::size_t size() const { return examples.size(); }

  // Checks every Example invariant against the declared dimensions and the
  // vocabulary, and that ids are unique. Throws altl::Error on violation.
  void validate() const;

  bool operator==(const Dataset&) const = default;
};

// Reads a line-delimited record file. Label names resolve against
// `vocabulary` when given (unknown names are an error); otherwise the
// vocabulary is built from names in order of first appearance.
Dataset load_dataset(const std::filesystem::path& path,
                     const std::optional<LabelVocabulary>& vocabulary = std::nullopt);

void save_dataset(const std::filesystem::path& path, const Dataset& dataset);

// One label name per line.
LabelVocabulary load_vocabulary(const std::filesystem::path& path);
void save_vocabulary(const std::filesystem::path& path, const LabelVocabulary& vocabulary);

// Single-record codec used by the file format; exposed for the service and CLI.
std::string encode_example(const Example& example, const LabelVocabulary& vocabulary);

struct TrainTestSplit {
  Dataset train;
  Dataset test;
};

// Random partition with floor(ratio * n) training examples. Both halves keep
// the original relative order. Requires 0 < ratio < 1.
TrainTestSplit split(const Dataset& dataset, double ratio, std::uint64_t seed);

struct SynthConfig {
  std::size_t n_examples = 1000;
  std::size_t n_labels = 20;
  std::size_t embedding_dim = 64;
  std::size_t feature_dim = 20;
  double zipf_exponent = 1.5;
  std::size_t n_prototypes = 60;
  double noise_sigma = 0.35;
  double cooccurrence_rate = 0.3;
  std::uint64_t seed = 0;

  void validate() const;
};

// Seeded long-tailed multi-label generator. Label names are "label_NN" in
// Zipf rank order, so index 0 is the most frequent label.
Dataset synth_generate(const SynthConfig& config);

// Count per vocabulary index. Every example must be labeled.
std::vector<std::size_t> label_frequencies(const Dataset& dataset);

// Partition of a training set (by example index) into labeled and unlabeled.
class Pool {
 public:
  Pool() = default;
  Pool(std::vector<std::size_t> labeled, std::vector<std::size_t> unlabeled);

  // All of [0, n) unlabeled except `labeled`, in index order.
  static Pool with_labeled(std::size_t n, std::span<const std::size_t> labeled);

  const std::vector<std::size_t>& labeled() const { return labeled_; }
  const std::vector<std::size_t>& unlabeled() const { return unlabeled_; }
  std::size_t size() const { return labeled_.size() + unlabeled_.size(); }

  bool is_labeled(std::size_t index) const;
  bool is_unlabeled(std::size_t index) const;

  // Moves `index` from the unlabeled to the labeled side.
  void mark_labeled(std::size_t index);

  // Partition invariants against the training set the indices refer to:
  // disjoint, exhaustive over [0, n), and every labeled example carries labels.
  void validate(std::span<const Example> examples) const;

  bool operator==(const Pool&) const = default;

 private:
  std::vector<std::size_t> labeled_;
  std::vector<std::size_t> unlabeled_;
};

}  // namespace altl

#endif  // ALTL_DATA_HPP_
