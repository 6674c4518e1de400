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

#ifndef ALTL_TESTS_ORACLES_FINITE_DIFFERENCE_HPP_
#define ALTL_TESTS_ORACLES_FINITE_DIFFERENCE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "altl/model.hpp"

namespace altl::testing {

struct GradientCheck {
  double worst_relative_error = 0.0;
  std::size_t checked = 0;
};

// Compares loss_gradient against central differences of mean_loss for every
// parameter. Relative error is |a - n| / max(|a|, |n|, floor); the floor keeps
// exactly-zero gradients (dead ReLU units) from dividing rounding noise by zero.
inline GradientCheck check_gradient(const ModelParams& params, std::span<const Example> examples,
                                    double h = 1e-5, double floor = 1e-6) {
  const ModelParams analytic = loss_gradient(params, examples);
  GradientCheck result;
  ModelParams probe = params;
  auto visit = [&](std::vector<double>& values, const std::vector<double>& grads) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double original = values[i];
      values[i] = original + h;
      const double up = mean_loss(probe, examples);
      values[i] = original - h;
      const double down = mean_loss(probe, examples);
      values[i] = original;
      const double numeric = (up - down) / (2.0 * h);
      const double a = grads[i];
      const double scale = std::max({std::abs(a), std::abs(numeric), floor});
      const double err = std::abs(a - numeric) / scale;
      result.worst_relative_error = std::max(result.worst_relative_error, err);
      ++result.checked;
    }
  };
  for (std::size_t l = 0; l < probe.layers.size(); ++l) {
    visit(probe.layers[l].weights.values, analytic.layers[l].weights.values);
    visit(probe.layers[l].bias, analytic.layers[l].bias);
  }
  return result;
}

}  // namespace altl::testing

#endif  // ALTL_TESTS_ORACLES_FINITE_DIFFERENCE_HPP_
