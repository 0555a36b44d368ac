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

#include "pedcomfort/commands.hpp"

#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "pedcomfort/dataset_io.hpp"
#include "pedcomfort/errors.hpp"
#include "pedcomfort/evaluation.hpp"
#include "pedcomfort/feature_io.hpp"
#include "pedcomfort/manifest.hpp"
#include "pedcomfort/predictors.hpp"
#include "pedcomfort/synthgen.hpp"

namespace pedcomfort {

namespace {

using ordered_json = nlohmann::ordered_json;

int exit_code_for(const Error& e) {
  return is_input_error(e.code()) ? kExitInputError : kExitComputationError;
}

PredictorConfig load_config(const std::optional<std::filesystem::path>& path) {
  return path ? PredictorConfig::from_json_file(*path) : PredictorConfig::defaults();
}

std::string params_sidecar_json(const FeatureParams& params, const RunManifest& manifest,
                                const std::filesystem::path& manifest_path) {
  ordered_json j;
  j["schema"] = "pedcomfort.feature-params/1";
  j["params"] = ordered_json::parse(feature_params_to_json(params));
  j["manifest"] = {{"run_id", manifest.run_id},
                   {"path", manifest_path.filename().generic_string()}};
  return j.dump(2) + "\n";
}

}  // namespace

FeatureParams feature_params_from_json(const std::filesystem::path& path) {
  ordered_json j;
  try {
    j = ordered_json::parse(csv::read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::bad_format, "cannot parse " + path.string() + ": " + e.what());
  }
  FeatureParams params;
  try {
    if (j.contains("dt")) params.dt = j["dt"].get<double>();
    if (j.contains("smoothing_window")) params.smoothing_window = j["smoothing_window"].get<int>();
    if (j.contains("v_floor")) params.v_floor = j["v_floor"].get<double>();
    if (j.contains("eps_closing")) params.eps_closing = j["eps_closing"].get<double>();
    if (j.contains("eps_dist")) params.eps_dist = j["eps_dist"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::bad_format, "bad feature params " + path.string() + ": " + e.what());
  }
  if (!(params.dt > 0.0) || params.smoothing_window < 1 || params.smoothing_window % 2 == 0) {
    throw Error(Errc::invalid_config, "feature params need dt > 0 and an odd smoothing window");
  }
  return params;
}

std::string feature_params_to_json(const FeatureParams& params) {
  ordered_json j;
  j["dt"] = params.dt;
  j["smoothing_window"] = params.smoothing_window;
  j["v_floor"] = params.v_floor;
  j["eps_closing"] = params.eps_closing;
  j["eps_dist"] = params.eps_dist;
  return j.dump(2) + "\n";
}

int cmd_features(const FeaturesOptions& options, std::ostream& diag) {
  try {
    const FeatureParams params =
        options.params ? feature_params_from_json(*options.params) : FeatureParams{};
    const EncounterDataset dataset = load_dataset(options.dataset);

    std::vector<FeatureRow> rows;
    std::vector<LabelRow> labels;
    std::vector<std::string> failures;
    for (const auto& trial : dataset.trials) {
      try {
        rows.push_back({trial.trial_id, extract_features(trial, params)});
      } catch (const Error& e) {
        failures.push_back(trial.trial_id + ": " + e.what());
        continue;
      }
      if (trial.reported_comfort) {
        labels.push_back({trial.trial_id, *trial.reported_comfort});
      }
    }
    if (!failures.empty()) {
      diag << "feature extraction failed for " << failures.size() << " trial(s):\n";
      for (const auto& f : failures) diag << "  " << f << "\n";
      return kExitComputationError;
    }

    std::vector<std::filesystem::path> inputs = {options.dataset};
    if (options.params) inputs.push_back(*options.params);
    const RunManifest manifest =
        make_manifest("features", {options.dataset.string(), options.out.string()}, inputs, 0);
    const std::filesystem::path manifest_path = options.out.string() + ".manifest.json";

    csv::write_text_file(options.out, features_to_csv(rows));
    csv::write_text_file(options.out.string() + ".params.json",
                         params_sidecar_json(params, manifest, manifest_path));
    if (options.labels_out) {
      csv::write_text_file(*options.labels_out, labels_to_csv(labels));
    }
    write_manifest(manifest, manifest_path);
    diag << "wrote " << rows.size() << " feature rows to " << options.out.string() << "\n";
    return kExitOk;
  } catch (const Error& e) {
    diag << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return kExitComputationError;
  }
}

int cmd_predict(const PredictOptions& options, std::ostream& diag) {
  try {
    const PredictorConfig config = load_config(options.config);
    const auto rows = read_features_csv(options.features);

    std::string out = "trial_id,composite_score,min_distance,min_pttc,composite,flags\n";
    for (const auto& row : rows) {
      const auto predictions = predict_all(row.features, config);
      const auto cell = [&](PredictorKind kind) {
        const Prediction& p = predictions.at(kind);
        return p.applicable ? std::to_string(p.value) : std::string();
      };
      out += row.trial_id + ',' +
             std::to_string(*predictions.at(PredictorKind::composite).score) + ',' +
             cell(PredictorKind::min_distance) + ',' + cell(PredictorKind::min_pttc) + ',' +
             cell(PredictorKind::composite) + ',' + format_flags(row.features.flags) + '\n';
    }

    std::vector<std::filesystem::path> inputs = {options.features};
    if (options.config) inputs.push_back(*options.config);
    const RunManifest manifest =
        make_manifest("predict", {options.features.string(), options.out.string()}, inputs, 0);

    csv::write_text_file(options.out, out);
    write_manifest(manifest, options.out.string() + ".manifest.json");
    diag << "wrote predictions for " << rows.size() << " trials to " << options.out.string()
         << "\n";
    return kExitOk;
  } catch (const Error& e) {
    diag << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return kExitComputationError;
  }
}

int cmd_evaluate(const EvaluateOptions& options, std::ostream& diag) {
  try {
    const PredictorConfig config = load_config(options.config);
    const auto feature_rows = read_features_csv(options.features);
    const auto label_rows = read_labels_csv(options.labels);

    std::map<std::string, int> labels;
    for (const auto& label : label_rows) labels[label.trial_id] = label.reported_comfort;

    std::vector<EvaluationInputRow> rows;
    std::vector<std::string> unlabeled;
    for (const auto& row : feature_rows) {
      const auto it = labels.find(row.trial_id);
      if (it == labels.end()) {
        unlabeled.push_back(row.trial_id);
        continue;
      }
      rows.push_back({row.trial_id, row.features, it->second});
    }
    if (!unlabeled.empty()) {
      diag << "error: " << options.labels.string() << " misses labels for " << unlabeled.size()
           << " trial(s), first: " << unlabeled.front() << "\n";
      return kExitInputError;
    }

    EvaluationOptions eval_options;
    eval_options.config = config;
    eval_options.n_permutations = options.n_permutations;
    eval_options.seed = options.seed;
    const EvaluationReport report = evaluate(rows, eval_options);

    std::vector<std::filesystem::path> inputs = {options.features, options.labels};
    if (options.config) inputs.push_back(*options.config);
    const RunManifest manifest = make_manifest(
        "evaluate", {options.features.string(), options.labels.string(), options.out.string()},
        inputs, options.seed);

    csv::write_text_file(options.out, report_to_json_string(report, config, &manifest));
    write_manifest(manifest, options.out.string() + ".manifest.json");
    diag << "evaluated " << report.n_trials << " trials into " << options.out.string() << "\n";
    return kExitOk;
  } catch (const Error& e) {
    diag << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return kExitComputationError;
  }
}

int cmd_simulate(const SimulateOptions& options, std::ostream& diag) {
  try {
    const SweepSpec spec =
        options.scenario ? SweepSpec::from_json_file(*options.scenario) : SweepSpec{};
    const EncounterDataset dataset = simulate_dataset(spec, options.n_trials, options.seed);

    std::filesystem::create_directories(options.out_dir);
    save_dataset(dataset, options.out_dir, DatasetFormat::trials_dir);

    std::vector<LabelRow> labels;
    for (const auto& trial : dataset.trials) {
      labels.push_back({trial.trial_id, *trial.reported_comfort});
    }
    write_labels_csv(labels, options.out_dir / "labels.csv");

    std::vector<std::filesystem::path> inputs;
    if (options.scenario) inputs.push_back(*options.scenario);
    const RunManifest manifest = make_manifest(
        "simulate", {std::to_string(options.n_trials), options.out_dir.string()}, inputs,
        options.seed);
    write_manifest(manifest, options.out_dir / "manifest.json");
    diag << "wrote " << dataset.trials.size() << " synthetic trials to "
         << options.out_dir.string() << "\n";
    return kExitOk;
  } catch (const Error& e) {
    diag << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return kExitComputationError;
  }
}

int cmd_report(const ReportOptions& options, std::ostream& diag) {
  try {
    const FeatureParams params =
        options.params ? feature_params_from_json(*options.params) : FeatureParams{};
    const PredictorConfig config = load_config(options.config);
    const EncounterDataset dataset = load_dataset(options.dataset);

    std::vector<EvaluationInputRow> rows;
    std::vector<std::string> failures;
    for (const auto& trial : dataset.trials) {
      try {
        EvaluationInputRow row;
        row.trial_id = trial.trial_id;
        row.features = extract_features(trial, params);
        row.reported_comfort = *trial.reported_comfort;  // loader guarantees presence
        rows.push_back(std::move(row));
      } catch (const Error& e) {
        failures.push_back(trial.trial_id + ": " + e.what());
      }
    }
    if (!failures.empty()) {
      diag << "feature extraction failed for " << failures.size() << " trial(s):\n";
      for (const auto& f : failures) diag << "  " << f << "\n";
      return kExitComputationError;
    }

    EvaluationOptions eval_options;
    eval_options.config = config;
    eval_options.n_permutations = options.n_permutations;
    eval_options.seed = options.seed;
    const EvaluationReport report = evaluate(rows, eval_options);

    std::vector<std::filesystem::path> inputs = {options.dataset};
    if (options.params) inputs.push_back(*options.params);
    if (options.config) inputs.push_back(*options.config);
    const RunManifest manifest = make_manifest(
        "report", {options.dataset.string(), options.out.string()}, inputs, options.seed);

    csv::write_text_file(options.out, report_to_json_string(report, config, &manifest));
    write_manifest(manifest, options.out.string() + ".manifest.json");
    diag << "evaluated " << report.n_trials << " trials into " << options.out.string() << "\n";
    return kExitOk;
  } catch (const Error& e) {
    diag << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return kExitComputationError;
  }
}

}  // namespace pedcomfort
