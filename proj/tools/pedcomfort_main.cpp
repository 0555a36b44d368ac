// Copyright 2026 The pedcomfort Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pedcomfort/commands.hpp"
#include "pedcomfort/version.hpp"

namespace {

std::optional<std::filesystem::path> optional_path(const std::string& value) {
  if (value.empty()) return std::nullopt;
  return std::filesystem::path(value);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robot-pedestrian encounter comfort toolkit"};
  app.set_version_flag("--version", std::string(pedcomfort::kVersion));
  app.require_subcommand(1);

  // features
  auto* features = app.add_subcommand(
      "features", "Extract the six kinematic variables per trial into a CSV");
  std::string features_dataset, features_params, features_out, features_labels_out;
  features->add_option("dataset", features_dataset, "Dataset path (trials.csv or trial directory)")
      ->required();
  features->add_option("--params", features_params, "Feature extraction parameters (JSON)");
  features->add_option("--out", features_out, "Output feature CSV")->required();
  features->add_option("--labels-out", features_labels_out,
                       "Also write the dataset's comfort labels to this CSV");

  // predict
  auto* predict =
      app.add_subcommand("predict", "Apply the comfort predictors to a feature CSV");
  std::string predict_features, predict_config, predict_out;
  predict->add_option("features", predict_features, "Feature CSV path")->required();
  predict->add_option("--config", predict_config, "Predictor configuration (JSON)");
  predict->add_option("--out", predict_out, "Output prediction CSV")->required();

  // evaluate
  auto* evaluate = app.add_subcommand(
      "evaluate", "Evaluate the predictors against reported comfort labels");
  std::string eval_features, eval_labels, eval_config, eval_out;
  int eval_permutations = 1000;
  std::uint64_t eval_seed = 0;
  evaluate->add_option("features", eval_features, "Feature CSV path")->required();
  evaluate->add_option("labels", eval_labels, "Labels CSV path")->required();
  evaluate->add_option("--config", eval_config, "Predictor configuration (JSON)");
  evaluate->add_option("--out", eval_out, "Output report JSON")->required();
  evaluate->add_option("--permutations", eval_permutations, "Permutation test iterations");
  evaluate->add_option("--seed", eval_seed, "Permutation test seed");

  // simulate
  auto* simulate =
      app.add_subcommand("simulate", "Generate a synthetic labeled encounter dataset");
  std::string sim_scenario, sim_out;
  int sim_trials = 10;
  std::uint64_t sim_seed = 0;
  simulate->add_option("--scenario", sim_scenario, "Scenario sweep spec (JSON)");
  simulate->add_option("--trials", sim_trials, "Number of trials to generate");
  simulate->add_option("--seed", sim_seed, "Generator seed");
  simulate->add_option("--out", sim_out, "Output dataset directory")->required();

  // report
  auto* report = app.add_subcommand(
      "report", "One-shot pipeline: dataset to evaluation report");
  std::string report_dataset, report_params, report_config, report_out;
  int report_permutations = 1000;
  std::uint64_t report_seed = 0;
  report->add_option("dataset", report_dataset, "Dataset path")->required();
  report->add_option("--params", report_params, "Feature extraction parameters (JSON)");
  report->add_option("--config", report_config, "Predictor configuration (JSON)");
  report->add_option("--out", report_out, "Output report JSON")->required();
  report->add_option("--permutations", report_permutations, "Permutation test iterations");
  report->add_option("--seed", report_seed, "Permutation test seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : pedcomfort::kExitInputError;
  }

  if (features->parsed()) {
    pedcomfort::FeaturesOptions options;
    options.dataset = features_dataset;
    options.params = optional_path(features_params);
    options.out = features_out;
    options.labels_out = optional_path(features_labels_out);
    return pedcomfort::cmd_features(options, std::cerr);
  }
  if (predict->parsed()) {
    pedcomfort::PredictOptions options;
    options.features = predict_features;
    options.config = optional_path(predict_config);
    options.out = predict_out;
    return pedcomfort::cmd_predict(options, std::cerr);
  }
  if (evaluate->parsed()) {
    pedcomfort::EvaluateOptions options;
    options.features = eval_features;
    options.labels = eval_labels;
    options.config = optional_path(eval_config);
    options.out = eval_out;
    options.n_permutations = eval_permutations;
    options.seed = eval_seed;
    return pedcomfort::cmd_evaluate(options, std::cerr);
  }
  if (simulate->parsed()) {
    pedcomfort::SimulateOptions options;
    options.scenario = optional_path(sim_scenario);
    options.n_trials = sim_trials;
    options.seed = sim_seed;
    options.out_dir = sim_out;
    return pedcomfort::cmd_simulate(options, std::cerr);
  }
  if (report->parsed()) {
    pedcomfort::ReportOptions options;
    options.dataset = report_dataset;
    options.params = optional_path(report_params);
    options.config = optional_path(report_config);
    options.out = report_out;
    options.n_permutations = report_permutations;
    options.seed = report_seed;
    return pedcomfort::cmd_report(options, std::cerr);
  }
  return pedcomfort::kExitInputError;
}
