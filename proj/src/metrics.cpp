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

#include "altl/metrics.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "altl/error.hpp"

namespace altl {
namespace {

double sample_precision(const LabelSet& truth, std::span<const double> s) {
  if (truth.empty()) fail(ErrorCode::kInvalidArgument, "lrap needs non-empty true label sets");
  double total = 0.0;
  for (const auto j : truth) {
    if (j >= s.size()) fail(ErrorCode::kInvalidArgument, "true label beyond score vector");
    std::size_t ranked_at_or_above = 0;
    std::size_t true_at_or_above = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (s[k] >= s[j]) {
        ++ranked_at_or_above;
        if (std::binary_search(truth.begin(), truth.end(), k)) ++true_at_or_above;
      }
    }
    total += static_cast<double>(true_at_or_above) / static_cast<double>(ranked_at_or_above);
  }
  return total / static_cast<double>(truth.size());
}

double f1_from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
  const double denominator = static_cast<double>(2 * tp + fp + fn);
  return denominator > 0.0 ? 2.0 * static_cast<double>(tp) / denominator : 0.0;
}

}  // namespace

double lrap(std::span<const LabelSet> truth, const Matrix& scores) {
  if (truth.size() != scores.rows) fail(ErrorCode::kInvalidArgument, "lrap length mismatch");
  if (truth.empty()) fail(ErrorCode::kInvalidArgument, "lrap needs at least one sample");
  double total = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) total += sample_precision(truth[i], scores.row(i));
  return total / static_cast<double>(truth.size());
}

double lrap(std::span<const LabelSet> truth, std::span<const std::vector<double>> scores) {
  if (truth.size() != scores.size()) fail(ErrorCode::kInvalidArgument, "lrap length mismatch");
  if (truth.empty()) fail(ErrorCode::kInvalidArgument, "lrap needs at least one sample");
  double total = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) total += sample_precision(truth[i], scores[i]);
  return total / static_cast<double>(truth.size());
}

double f1(std::span<const LabelSet> truth, std::span<const LabelSet> predicted, F1Average averaging) {
  if (truth.size() != predicted.size()) fail(ErrorCode::kInvalidArgument, "f1 length mismatch");
  struct Counts {
    std::size_t tp = 0, fp = 0, fn = 0;
  };
  std::map<std::size_t, Counts> per_label;
  Counts pooled;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const LabelSet t = normalize_labels(truth[i]);
    const LabelSet p = normalize_labels(predicted[i]);
    for (const auto j : p) {
      if (std::binary_search(t.begin(), t.end(), j)) {
        ++per_label[j].tp;
        ++pooled.tp;
      } else {
        ++per_label[j].fp;
        ++pooled.fp;
      }
    }
    for (const auto j : t) {
      if (!std::binary_search(p.begin(), p.end(), j)) {
        ++per_label[j].fn;
        ++pooled.fn;
      }
    }
  }
  if (averaging == F1Average::kMicro) return f1_from_counts(pooled.tp, pooled.fp, pooled.fn);
  if (per_label.empty()) return 0.0;
  double total = 0.0;
  for (const auto& [label, c] : per_label) total += f1_from_counts(c.tp, c.fp, c.fn);
  return total / static_cast<double>(per_label.size());
}

std::size_t labels_discovered(std::span<const Example> labeled) {
  std::set<std::size_t> seen;
  for (const auto& ex : labeled) {
    if (!ex.labels) fail(ErrorCode::kFailedPrecondition, "example '" + ex.id + "' is unlabeled");
    seen.insert(ex.labels->begin(), ex.labels->end());
  }
  return seen.size();
}

}  // namespace altl
