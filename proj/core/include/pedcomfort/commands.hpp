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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "pedcomfort/kinematics.hpp"

namespace pedcomfort {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitComputationError = 3;

// All commands build their outputs in memory first, so a failing run never
// leaves a partial output file behind, and write a `<out>.manifest.json`
// provenance record referenced from the output itself.

struct FeaturesOptions {
  std::filesystem::path dataset;
  std::optional<std::filesystem::path> params;  // FeatureParams JSON
  std::filesystem::path out;                    // feature CSV
  std::optional<std::filesystem::path> labels_out;  // comfort labels from the dataset
};

struct PredictOptions {
  std::filesystem::path features;
  std::optional<std::filesystem::path> config;  // PredictorConfig JSON
  std::filesystem::path out;                    // predictions CSV
};

struct EvaluateOptions {
  std::filesystem::path features;
  std::filesystem::path labels;
  std::optional<std::filesystem::path> config;
  std::filesystem::path out;  // report JSON
  int n_permutations = 1000;
  std::uint64_t seed = 0;
};

struct SimulateOptions {
  std::optional<std::filesystem::path> scenario;  // SweepSpec JSON
  int n_trials = 10;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir;
};

struct ReportOptions {
  std::filesystem::path dataset;
  std::optional<std::filesystem::path> params;
  std::optional<std::filesystem::path> config;
  std::filesystem::path out;
  int n_permutations = 1000;
  std::uint64_t seed = 0;
};

int cmd_features(const FeaturesOptions& options, std::ostream& diag);
int cmd_predict(const PredictOptions& options, std::ostream& diag);
int cmd_evaluate(const EvaluateOptions& options, std::ostream& diag);
int cmd_simulate(const SimulateOptions& options, std::ostream& diag);
int cmd_report(const ReportOptions& options, std::ostream& diag);

FeatureParams feature_params_from_json(const std::filesystem::path& path);
std::string feature_params_to_json(const FeatureParams& params);

}  // namespace pedcomfort
