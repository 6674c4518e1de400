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

// altl: command-line front end for the active learning toolkit.

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "altl/acquisition.hpp"
#include "altl/clustering.hpp"
#include "altl/config.hpp"
#include "altl/data.hpp"
#include "altl/engine.hpp"
#include "altl/error.hpp"
#include "altl/http_api.hpp"
#include "altl/metrics.hpp"
#include "altl/model.hpp"
#include "altl/service.hpp"
#include "json.hpp"

namespace {

using Json = nlohmann::json;
namespace fs = std::filesystem;
using namespace altl;

// Paths inside a config file are taken relative to that file.
fs::path relative_to(const fs::path& config_file, const fs::path& p) {
  if (p.is_absolute()) return p;
  return config_file.parent_path() / p;
}

Json load_config(const std::string& path) { return path.empty() ? Json::object() : read_json_file(path); }

struct FeatureRecord {
  std::string id;
  std::vector<double> features;
  std::vector<double> scores;
};

// One {"id", "features", "scores"?} object per line.
std::vector<FeatureRecord> read_features(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kNotFound, "cannot open '" + path.string() + "'");
  std::vector<FeatureRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const Json j = Json::parse(line);
      FeatureRecord r;
      r.id = j.at("id").get<std::string>();
      if (j.contains("features")) r.features = j["features"].get<std::vector<double>>();
      if (j.contains("scores")) r.scores = j["scores"].get<std::vector<double>>();
      out.push_back(std::move(r));
    } catch (const Json::exception& e) {
      fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

Matrix feature_rows(const std::vector<FeatureRecord>& records, const std::vector<std::size_t>& which,
                    bool scores, std::size_t width) {
  Matrix m(which.size(), width);
  for (std::size_t i = 0; i < which.size(); ++i) {
    const auto& v = scores ? records[which[i]].scores : records[which[i]].features;
    if (v.size() != width) {
      fail(ErrorCode::kDimensionMismatch, "record '" + records[which[i]].id + "' has the wrong width");
    }
    std::copy(v.begin(), v.end(), m.row(i).begin());
  }
  return m;
}

void print_summary(const ExperimentResult& result) {
  for (const auto& p : result.aggregate) {
    std::printf("iter %2zu  n_labeled %5.1f  lrap %.4f +- %.4f  f1 %.4f  labels %.2f\n", p.iteration,
                p.n_labeled.mean, p.lrap.mean, p.lrap.sd, p.f1_micro.mean, p.labels_discovered.mean);
  }
  if (result.fully_supervised) {
    std::printf("fully supervised  lrap %.4f  f1 %.4f\n", result.fully_supervised->lrap,
                result.fully_supervised->f1_micro);
  }
}

int cmd_synth(const std::string& config_path, const std::string& output, const std::string& vocab_out) {
  Json j = load_config(config_path);
  if (j.contains("synth")) j = j["synth"];
  const Dataset data = synth_generate(synth_config_from_json(j));
  save_dataset(output, data);
  if (!vocab_out.empty()) save_vocabulary(vocab_out, data.vocabulary);
  std::printf("wrote %zu examples, %zu labels to %s\n", data.size(), data.vocabulary.size(), output.c_str());
  return 0;
}

int cmd_run(const std::string& config_path, const std::string& output, const std::vector<double>& lambdas,
            const std::vector<std::string>& strategies, bool save_models) {
  ExperimentConfig config = experiment_config_from_json(load_config(config_path));
  if (config.dataset_path) config.dataset_path = relative_to(config_path, *config.dataset_path);
  if (config.vocabulary_path) config.vocabulary_path = relative_to(config_path, *config.vocabulary_path);
  config.validate();
  const TrainTestSplit data = prepare_data(config);

  struct Variant {
    std::string name;
    ExperimentConfig config;
  };
  std::vector<Variant> variants;
  std::vector<std::string> names = strategies;
  if (names.empty()) names.push_back(std::string(strategy_name(config.strategy)));
  for (const auto& s : names) {
    ExperimentConfig c = config;
    c.strategy = parse_strategy(s);
    if (lambdas.empty() || c.strategy != Strategy::kAltl) {
      variants.push_back({names.size() > 1 ? s : "", c});
      continue;
    }
    for (const double l : lambdas) {
      c.lambda = l;
      char buf[64];
      std::snprintf(buf, sizeof buf, "%s_lambda_%g", s.c_str(), l);
      variants.push_back({buf, c});
    }
  }

  for (std::size_t v = 0; v < variants.size(); ++v) {
    const auto& [name, c] = variants[v];
    const fs::path dir = name.empty() ? fs::path(output) : fs::path(output) / name;
    std::printf("== %s (strategy %s, lambda %g)\n", name.empty() ? "run" : name.c_str(),
                std::string(strategy_name(c.strategy)).c_str(), c.lambda);
    ExperimentConfig run_config = c;
    // The fully supervised reference is the same for every variant.
    run_config.fully_supervised = c.fully_supervised && v == 0;
    const ExperimentResult result = run_experiment(run_config, data);
    write_results(dir, run_config, result);
    if (save_models) {
      for (std::size_t r = 0; r < result.runs.size(); ++r) {
        save_checkpoint(dir / ("model_run" + std::to_string(r) + ".json"), result.runs[r].final_model);
      }
    }
    print_summary(result);
  }
  return 0;
}

int cmd_select(const std::string& features_path, const std::string& pool_path, const std::string& config_path) {
  const auto records = read_features(features_path);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < records.size(); ++i) index[records[i].id] = i;
  const Json pool = read_json_file(pool_path);
  auto lookup = [&](const Json& ids) {
    std::vector<std::size_t> out;
    for (const auto& id : ids) {
      const auto it = index.find(id.get<std::string>());
      if (it == index.end()) fail(ErrorCode::kNotFound, "pool names unknown id '" + id.get<std::string>() + "'");
      out.push_back(it->second);
    }
    return out;
  };
  const std::vector<std::size_t> labeled = lookup(pool.value("labeled", Json::array()));
  const std::vector<std::size_t> unlabeled = lookup(pool.value("unlabeled", Json::array()));

  Json j = load_config(config_path);
  APConfig ap;
  if (j.contains("clustering")) {
    ap = ap_config_from_json(j["clustering"]);
    j.erase("clustering");
  }
  const AcquisitionConfig acq = acquisition_config_from_json(j);
  std::vector<std::size_t> positions;
  if (acq.strategy == Strategy::kRandom) {
    positions = select_batch_random(unlabeled.size(), acq);
  } else if (acq.strategy == Strategy::kMaxEntropy) {
    const std::size_t width = unlabeled.empty() ? 0 : records[unlabeled.front()].scores.size();
    positions = select_batch_maxentropy(feature_rows(records, unlabeled, true, width), acq);
  } else {
    const std::size_t width = records.empty() ? 0 : records.front().features.size();
    const Matrix l = feature_rows(records, labeled, false, width);
    const Matrix u = feature_rows(records, unlabeled, false, width);
    if (acq.strategy == Strategy::kCoreset) {
      positions = select_batch_coreset(l, u, acq);
    } else {
      std::vector<std::size_t> all(records.size());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
      const Matrix everything = feature_rows(records, all, false, width);
      const ClusterResult clusters = affinity_propagation(everything, ap);
      positions = select_batch_altl(l, u, stack_rows(centroids(clusters, everything)), acq);
    }
  }
  for (const auto p : positions) std::printf("%s\n", records[unlabeled[p]].id.c_str());
  return 0;
}

int cmd_cluster(const std::string& features_path, const std::string& config_path, const std::string& output) {
  const auto records = read_features(features_path);
  if (records.empty()) fail(ErrorCode::kInvalidArgument, "no feature records");
  const APConfig ap = ap_config_from_json(load_config(config_path));
  std::vector<std::size_t> all(records.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const ClusterResult r = affinity_propagation(feature_rows(records, all, false, records.front().features.size()), ap);
  Json out = to_json(r);
  Json ids = Json::array();
  for (const auto k : r.exemplars) ids.push_back(records[k].id);
  out["exemplar_ids"] = std::move(ids);
  const std::string text = out.dump() + "\n";
  if (output.empty() || output == "-") {
    std::fputs(text.c_str(), stdout);
  } else {
    std::ofstream(output) << text;
  }
  return 0;
}

int cmd_eval(const std::string& dataset_path, const std::string& vocab_path, const std::string& checkpoint,
             double margin, const std::string& features_out) {
  std::optional<LabelVocabulary> vocab;
  if (!vocab_path.empty()) vocab = load_vocabulary(vocab_path);
  const Dataset data = load_dataset(dataset_path, vocab);
  const ModelParams model = load_checkpoint(checkpoint);
  const Matrix s = score_matrix(model, data.examples);

  if (!features_out.empty()) {
    const Matrix f = feature_matrix(model, data.examples);
    std::ofstream out(features_out);
    for (std::size_t i = 0; i < data.size(); ++i) {
      const auto fr = f.row(i);
      const auto sr = s.row(i);
      out << Json{{"id", data.examples[i].id},
                  {"features", std::vector<double>(fr.begin(), fr.end())},
                  {"scores", std::vector<double>(sr.begin(), sr.end())}}
                 .dump()
          << '\n';
    }
  }

  std::vector<LabelSet> truth, predicted;
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!data.examples[i].labels) continue;
    truth.push_back(*data.examples[i].labels);
    predicted.push_back(predict_labels(s.row(i), margin));
    rows.push_back(i);
  }
  if (truth.empty()) {
    std::printf("{\"evaluated\": 0}\n");
    return 0;
  }
  Matrix labeled_scores(rows.size(), s.cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::copy_n(s.row(rows[i]).begin(), s.cols, labeled_scores.row(i).begin());
  }
  const Json result{{"evaluated", truth.size()},
                    {"lrap", lrap(truth, labeled_scores)},
                    {"f1_micro", f1(truth, predicted, F1Average::kMicro)},
                    {"f1_macro", f1(truth, predicted, F1Average::kMacro)}};
  std::printf("%s\n", result.dump(2).c_str());
  return 0;
}

HttpApi* g_api = nullptr;

void on_signal(int) {
  if (g_api) g_api->stop();
}

int cmd_serve(const std::string& host, int port, const std::string& dataset, const std::string& state_dir) {
  std::optional<fs::path> state;
  if (!state_dir.empty()) state = state_dir;
  std::optional<fs::path> default_dataset;
  if (!dataset.empty()) default_dataset = fs::absolute(dataset);
  SessionManager manager(state, default_dataset);
  HttpApi api(manager);
  if (!api.bind(host, port)) fail(ErrorCode::kInternal, "cannot bind " + host + ":" + std::to_string(port));
  g_api = &api;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::printf("listening on http://%s:%d\n", host.c_str(), port);
  std::fflush(stdout);
  api.listen_after_bind();
  g_api = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active learning for long-tailed multi-label data"};
  app.require_subcommand(1);

  std::string config, output, vocab, features, pool, dataset, checkpoint, features_out, state_dir;
  std::string host = "127.0.0.1";
  std::vector<double> lambdas;
  std::vector<std::string> strategies;
  bool save_models = false;
  double margin = 0.2;
  int port = 8080;

  auto* synth = app.add_subcommand("synth", "Generate a synthetic long-tailed dataset");
  synth->add_option("--config", config, "Synth config JSON");
  synth->add_option("-o,--output", output, "Dataset file to write")->required();
  synth->add_option("--vocab", vocab, "Also write the vocabulary file");

  auto* run = app.add_subcommand("run", "Run a simulated active learning experiment");
  run->add_option("--config", config, "Experiment config JSON");
  run->add_option("-o,--output", output, "Results directory")->required();
  run->add_option("--lambdas", lambdas, "Sweep ALTL over these lambda values")->delimiter(',');
  run->add_option("--strategies", strategies, "Compare these strategies")->delimiter(',');
  run->add_flag("--save-models", save_models, "Write each run's final checkpoint");

  auto* select = app.add_subcommand("select", "Select the next batch from a features file");
  select->add_option("--features", features, "JSONL of {id, features, scores?}")->required();
  select->add_option("--pool", pool, "JSON {labeled: [ids], unlabeled: [ids]}")->required();
  select->add_option("--config", config, "Acquisition config JSON");

  auto* cluster = app.add_subcommand("cluster", "Affinity propagation over a features file");
  cluster->add_option("--features", features, "JSONL of {id, features}")->required();
  cluster->add_option("--config", config, "Clustering config JSON");
  cluster->add_option("-o,--output", output, "Output file (default stdout)");

  auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint on a dataset");
  eval->add_option("--dataset", dataset, "Dataset file")->required();
  eval->add_option("--vocab", vocab, "Vocabulary file");
  eval->add_option("--checkpoint", checkpoint, "Model checkpoint")->required();
  eval->add_option("--margin", margin, "Prediction margin below the top score");
  eval->add_option("--features-out", features_out, "Write latent features and scores as JSONL");

  auto* serve = app.add_subcommand("serve", "Serve annotation sessions over HTTP");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port");
  serve->add_option("--dataset", dataset, "Default dataset for new sessions");
  serve->add_option("--state-dir", state_dir, "Persist sessions here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) return cmd_synth(config, output, vocab);
    if (*run) return cmd_run(config, output, lambdas, strategies, save_models);
    if (*select) return cmd_select(features, pool, config);
    if (*cluster) return cmd_cluster(features, config, output);
    if (*eval) return cmd_eval(dataset, vocab, checkpoint, margin, features_out);
    if (*serve) return cmd_serve(host, port, dataset, state_dir);
  } catch (const altl::Error& e) {
    std::fprintf(stderr, "altl: %s: %s\n", std::string(altl::error_code_name(e.code())).c_str(), e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "altl: %s\n", e.what());
    return 1;
  }
  return 0;
}
