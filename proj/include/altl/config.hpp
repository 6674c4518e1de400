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

#ifndef ALTL_CONFIG_HPP_
#define ALTL_CONFIG_HPP_

// JSON mapping for the config types. Every field is optional and falls back
// to the struct default; unknown keys are rejected so typos do not pass
// silently.

#include <filesystem>

#include "altl/engine.hpp"
#include "json.hpp"

namespace altl {

SynthConfig synth_config_from_json(const nlohmann::json& j, SynthConfig base = {});
APConfig ap_config_from_json(const nlohmann::json& j, APConfig base = {});
TrainConfig train_config_from_json(const nlohmann::json& j, TrainConfig base = {});
ModelConfig model_config_from_json(const nlohmann::json& j, ModelConfig base);
AcquisitionConfig acquisition_config_from_json(const nlohmann::json& j, AcquisitionConfig base = {});
ExperimentConfig experiment_config_from_json(const nlohmann::json& j, ExperimentConfig base = {});

nlohmann::json to_json(const SynthConfig& c);
nlohmann::json to_json(const APConfig& c);
nlohmann::json to_json(const TrainConfig& c);
nlohmann::json to_json(const ModelConfig& c);
nlohmann::json to_json(const AcquisitionConfig& c);
nlohmann::json to_json(const ExperimentConfig& c);

nlohmann::json to_json(const ClusterResult& r);
nlohmann::json to_json(const MetricsRecord& r);

// Reads and parses a JSON file; kNotFound / kParse on failure.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace altl

#endif  // ALTL_CONFIG_HPP_
