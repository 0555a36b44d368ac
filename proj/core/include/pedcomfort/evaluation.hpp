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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pedcomfort/feature_io.hpp"
#include "pedcomfort/manifest.hpp"
#include "pedcomfort/predictors.hpp"
#include "pedcomfort/stats.hpp"

namespace pedcomfort {

struct EvaluationInputRow {
  std::string trial_id;
  KinematicFeatures features;
  int reported_comfort = 0;  // 1..5
};

struct EvaluationOptions {
  PredictorConfig config;
  int n_permutations = 1000;
  std::uint64_t seed = 0;
};

// One row of the per-variable association summary.
struct VariableAssociation {
  Variable variable = Variable::speed;
  int n = 0;  // trials with a finite value for this variable
  std::optional<stats::DcorResult> dcor;  // nullopt when n < 2
};

struct PredictorEvaluation {
  PredictorKind kind = PredictorKind::min_distance;
  int n = 0;  // trials where the predictor was applicable
  stats::ContingencyTable2x2 table;
  std::optional<stats::ChiSquareResult> chi2_uncorrected;  // nullopt on a zero marginal
  std::optional<stats::ChiSquareResult> chi2_yates;
  stats::OddsRatioResult odds;
  stats::ClassificationMetrics metrics_standard;
  stats::ClassificationMetrics metrics_transposed;
};

struct EvaluationReport {
  int n_trials = 0;
  std::uint64_t seed = 0;
  int n_permutations = 0;
  std::vector<VariableAssociation> associations;  // v, d_min, d_lat, rho, t_p, d_tp
  std::vector<PredictorEvaluation> predictors;    // min_distance, min_pttc, composite
};

// Per-variable distance correlation against the raw 1..5 comfort ratings
// (missing values drop per variable) plus the three binary predictors
// against the binarized comfort.
EvaluationReport evaluate(std::span<const EvaluationInputRow> rows,
                          const EvaluationOptions& options);

// JSON with a stable key order; byte-identical for identical inputs.
std::string report_to_json_string(const EvaluationReport& report, const PredictorConfig& config,
                                  const RunManifest* manifest);

}  // namespace pedcomfort
