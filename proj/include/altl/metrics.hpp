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

#ifndef ALTL_METRICS_HPP_
#define ALTL_METRICS_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "altl/data.hpp"
#include "altl/matrix.hpp"

namespace altl {

struct MetricsRecord {
  std::size_t iteration = 0;
  std::size_t n_labeled = 0;
  double lrap = 0.0;
  double f1_micro = 0.0;
  double f1_macro = 0.0;
  std::size_t labels_discovered = 0;

  bool operator==(const MetricsRecord&) const = default;
};

enum class F1Average { kMicro, kMacro };

// Label ranking average precision. Ties count on both sides (rank uses >=).
double lrap(std::span<const LabelSet> truth, const Matrix& scores);
double lrap(std::span<const LabelSet> truth, std::span<const std::vector<double>> scores);

// Micro: pooled TP/FP/FN. Macro: mean per-label F1 over labels that occur in
// the truth or the predictions. Empty denominators give 0.
double f1(std::span<const LabelSet> truth, std::span<const LabelSet> predicted, F1Average averaging);

// Distinct labels across a set of labeled examples.
std::size_t labels_discovered(std::span<const Example> labeled);

}  // namespace altl

#endif  // ALTL_METRICS_HPP_
