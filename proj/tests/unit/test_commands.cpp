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

#include <doctest.h>

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pedcomfort/commands.hpp"
#include "pedcomfort/dataset_io.hpp"
#include "pedcomfort/feature_io.hpp"
#include "pedcomfort/synthgen.hpp"
#include "support/fixtures.hpp"

using namespace pedcomfort;
using pedcomfort::testing::read_file;
using pedcomfort::testing::TempDir;
using pedcomfort::testing::write_file;

namespace {

int run_simulate(const std::filesystem::path& out, int trials, std::uint64_t seed,
                 std::ostream& diag) {
  SimulateOptions options;
  options.n_trials = trials;
  options.seed = seed;
  options.out_dir = out;
  return cmd_simulate(options, diag);
}

}  // namespace

TEST_CASE("features command writes one row per trial with a params sidecar") {
  TempDir tmp("cmd_features");
  std::ostringstream diag;
  REQUIRE(run_simulate(tmp.path() / "ds", 10, 11, diag) == kExitOk);

  FeaturesOptions options;
  options.dataset = tmp.path() / "ds";
  options.out = tmp.path() / "features.csv";
  options.labels_out = tmp.path() / "labels.csv";
  REQUIRE(cmd_features(options, diag) == kExitOk);

  const auto rows = read_features_csv(options.out);
  CHECK(rows.size() == 10);
  for (const auto& row : rows) {
    CHECK(row.features.v.has_value());
    CHECK(row.features.d_min.has_value());
    CHECK(row.features.flags.empty());
  }
  CHECK(read_labels_csv(*options.labels_out).size() == 10);

  const auto sidecar = nlohmann::json::parse(read_file(options.out.string() + ".params.json"));
  CHECK(sidecar["params"]["dt"] == 0.05);
  CHECK(sidecar["manifest"].contains("run_id"));
  CHECK(std::filesystem::exists(options.out.string() + ".manifest.json"));
}

TEST_CASE("lateral-invalid trials produce an empty lateral cell") {
  TempDir tmp("cmd_lat");
  SweepSpec spec;
  auto dataset = simulate_dataset(spec, 3, 4);
  dataset.trials[1].lateral_valid = false;
  save_dataset(dataset, tmp.path() / "ds", DatasetFormat::trials_dir);

  FeaturesOptions options;
  options.dataset = tmp.path() / "ds";
  options.out = tmp.path() / "features.csv";
  std::ostringstream diag;
  REQUIRE(cmd_features(options, diag) == kExitOk);

  const auto text = read_file(options.out);
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);  // header
  int empty_lat = 0;
  while (std::getline(lines, line)) {
    std::size_t pos = 0;
    for (int comma = 0; comma < 3; ++comma) pos = line.find(',', pos) + 1;
    if (line[pos] == ',') ++empty_lat;  // d_lat column empty
  }
  CHECK(empty_lat == 1);
}

TEST_CASE("features command fails cleanly on a missing dataset") {
  TempDir tmp("cmd_missing");
  FeaturesOptions options;
  options.dataset = tmp.path() / "nonexistent";
  options.out = tmp.path() / "features.csv";
  std::ostringstream diag;
  CHECK(cmd_features(options, diag) == kExitInputError);
  CHECK_FALSE(std::filesystem::exists(options.out));
  CHECK(diag.str().find("nonexistent") != std::string::npos);
}

TEST_CASE("predict command emits scores and binary predictions") {
  TempDir tmp("cmd_predict");
  std::ostringstream diag;
  REQUIRE(run_simulate(tmp.path() / "ds", 5, 3, diag) == kExitOk);
  FeaturesOptions foptions;
  foptions.dataset = tmp.path() / "ds";
  foptions.out = tmp.path() / "features.csv";
  REQUIRE(cmd_features(foptions, diag) == kExitOk);

  PredictOptions options;
  options.features = foptions.out;
  options.out = tmp.path() / "predictions.csv";
  REQUIRE(cmd_predict(options, diag) == kExitOk);
  const auto text = read_file(options.out);
  CHECK(text.find("trial_id,composite_score,min_distance,min_pttc,composite,flags") == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 6);  // header + 5 rows
}

TEST_CASE("evaluate command rejects label files that miss trials") {
  TempDir tmp("cmd_eval_missing");
  std::ostringstream diag;
  REQUIRE(run_simulate(tmp.path() / "ds", 5, 3, diag) == kExitOk);
  FeaturesOptions foptions;
  foptions.dataset = tmp.path() / "ds";
  foptions.out = tmp.path() / "features.csv";
  REQUIRE(cmd_features(foptions, diag) == kExitOk);

  write_file(tmp.path() / "labels.csv", "trial_id,reported_comfort\nt0001,4\n");
  EvaluateOptions options;
  options.features = foptions.out;
  options.labels = tmp.path() / "labels.csv";
  options.out = tmp.path() / "report.json";
  std::ostringstream ediag;
  CHECK(cmd_evaluate(options, ediag) == kExitInputError);
  CHECK(ediag.str().find("labels.csv") != std::string::npos);
  CHECK_FALSE(std::filesystem::exists(options.out));

  // an empty labels file is an input error naming the file
  write_file(tmp.path() / "labels.csv", "");
  std::ostringstream ediag2;
  CHECK(cmd_evaluate(options, ediag2) == kExitInputError);
  CHECK(ediag2.str().find("labels.csv") != std::string::npos);
}

TEST_CASE("evaluate reproduces the published composite contingency from a crafted fixture") {
  TempDir tmp("cmd_eval_golden");
  // Feature rows engineered so the composite prediction and the binarized
  // label reproduce the published composite table [[32,31],[18,64]].
  std::vector<FeatureRow> rows;
  std::vector<LabelRow> labels;
  int counter = 0;
  const auto push = [&](int pred, int truth, int count) {
    for (int i = 0; i < count; ++i) {
      FeatureRow row;
      row.trial_id = "t" + std::to_string(++counter);
      row.features.v = pred ? 1.4 : 2.8;           // weight 2 vs 0
      row.features.d_min = pred ? 1.2 : 0.3;       // weight 2 vs 0
      row.features.d_lat = pred ? 0.8 : 0.3;       // weight 2 vs 0
      row.features.rho = pred ? 1.0 : 0.5;         // weight 2 vs 0
      row.features.t_p = pred ? 1.2 : 0.3;         // weight 2 vs 0
      row.features.d_tp = pred ? 1.2 : 0.3;        // weight 2 vs 0
      rows.push_back(row);
      labels.push_back({row.trial_id, truth ? 5 : 1});
    }
  };
  push(0, 0, 32);
  push(0, 1, 31);
  push(1, 0, 18);
  push(1, 1, 64);
  write_features_csv(rows, tmp.path() / "features.csv");
  write_labels_csv(labels, tmp.path() / "labels.csv");

  EvaluateOptions options;
  options.features = tmp.path() / "features.csv";
  options.labels = tmp.path() / "labels.csv";
  options.out = tmp.path() / "report.json";
  options.n_permutations = 50;
  std::ostringstream diag;
  REQUIRE(cmd_evaluate(options, diag) == kExitOk);

  const auto report = nlohmann::json::parse(read_file(options.out));
  const auto& composite = report["predictors"]["composite"];
  CHECK(composite["contingency"][0][0] == 32);
  CHECK(composite["contingency"][0][1] == 31);
  CHECK(composite["contingency"][1][0] == 18);
  CHECK(composite["contingency"][1][1] == 64);
  CHECK(std::abs(composite["odds_ratio"]["value"].get<double>() - 3.67) <= 0.01);
  const auto& metrics = composite["metrics"]["transposed"];
  CHECK(std::abs(metrics["accuracy"].get<double>() - 0.662) <= 0.002);
  CHECK(std::abs(metrics["f1"].get<double>() - 0.723) <= 0.002);
  const auto& chi2 = composite["chi_square"]["yates"];
  CHECK(std::abs(chi2["statistic"].get<double>() - 11.87) <= 0.05);
}

TEST_CASE("simulate command is byte-identical for a fixed seed") {
  TempDir tmp("cmd_sim_det");
  std::ostringstream diag;
  REQUIRE(run_simulate(tmp.path() / "a", 6, 123, diag) == kExitOk);
  REQUIRE(run_simulate(tmp.path() / "b", 6, 123, diag) == kExitOk);
  for (const auto& trial : {"t0001", "t0004", "t0006"}) {
    const auto rel = std::filesystem::path(trial) / "robot.csv";
    CHECK(read_file(tmp.path() / "a" / rel) == read_file(tmp.path() / "b" / rel));
    const auto ped = std::filesystem::path(trial) / "pedestrian.csv";
    CHECK(read_file(tmp.path() / "a" / ped) == read_file(tmp.path() / "b" / ped));
  }
  CHECK(read_file(tmp.path() / "a" / "labels.csv") == read_file(tmp.path() / "b" / "labels.csv"));
}

TEST_CASE("simulate command rejects invalid scenarios") {
  TempDir tmp("cmd_sim_bad");
  write_file(tmp.path() / "sweep.json", "{\"base\": {\"dt\": 0.0}}");
  SimulateOptions options;
  options.scenario = tmp.path() / "sweep.json";
  options.out_dir = tmp.path() / "ds";
  std::ostringstream diag;
  CHECK(cmd_simulate(options, diag) == kExitInputError);
}

TEST_CASE("report command runs the pipeline end to end") {
  TempDir tmp("cmd_report");
  std::ostringstream diag;
  REQUIRE(run_simulate(tmp.path() / "ds", 10, 21, diag) == kExitOk);

  ReportOptions options;
  options.dataset = tmp.path() / "ds";
  options.out = tmp.path() / "report.json";
  options.n_permutations = 100;
  options.seed = 5;
  REQUIRE(cmd_report(options, diag) == kExitOk);
  const auto report = nlohmann::json::parse(read_file(options.out));
  CHECK(report["n_trials"] == 10);
  CHECK(report["dcor"].contains("t_p"));
  CHECK(report["manifest"].contains("run_id"));
}
