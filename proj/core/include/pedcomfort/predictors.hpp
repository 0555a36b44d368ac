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

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pedcomfort/kinematics.hpp"
#include "pedcomfort/trial.hpp"

namespace pedcomfort {

enum class Variable {
  speed,
  min_distance,
  lateral_distance,
  max_curvature,
  min_pttc,
  distance_at_min_pttc,
};

inline constexpr std::array<Variable, 6> kAllVariables = {
    Variable::speed,          Variable::min_distance, Variable::lateral_distance,
    Variable::max_curvature,  Variable::min_pttc,     Variable::distance_at_min_pttc,
};

// Short column names: v, d_min, d_lat, rho, t_p, d_tp.
const char* variable_name(Variable variable);
Variable parse_variable(std::string_view name);

using BinLabel = char;  // 'A'..'E'

// Ordered bin edges per continuous variable; bin i covers
// [edges[i], edges[i+1]) and the final bin is right-closed at +infinity.
// Speed is categorical: R14 -> A, R28 -> B.
struct BinningScheme {
  std::map<Variable, std::vector<double>> edges;

  static BinningScheme defaults();

  int bin_count(Variable variable) const;
  BinLabel last_label(Variable variable) const;

  // Left-closed / right-open lookup. +infinity lands in the top bin.
  // Throws OutOfRange for values below the first edge and MissingValue for NaN.
  BinLabel assign(Variable variable, double value) const;
  BinLabel assign(SpeedGroup group) const;

  void validate() const;
};

// nullopt is the distinguished "unbinned" result for a missing value.
std::optional<BinLabel> assign_bin(Variable variable, std::optional<double> value,
                                   const BinningScheme& scheme);

// Integer weight per (variable, bin); the composite score sums one weight
// per variable.
struct WeightTable {
  std::map<Variable, std::map<BinLabel, int>> weights;

  static WeightTable defaults();

  int weight(Variable variable, BinLabel bin) const;
  int max_total() const;  // 12 under the defaults

  void validate(const BinningScheme& scheme) const;
};

// Reported comfort 1..5 -> binary comfort: 1 iff s >= 4.
int binarize_comfort(int s);

enum class PredictorKind { min_distance, min_pttc, composite };

const char* predictor_name(PredictorKind kind);

struct Prediction {
  PredictorKind kind = PredictorKind::min_distance;
  int value = 0;  // binary
  std::optional<int> score;  // composite score for the composite predictor
  bool applicable = true;    // false when the needed feature is missing
};

// Bins, weights and decision thresholds; fully overridable from JSON.
// The built-in defaults carry provenance "builtin-default".
struct PredictorConfig {
  BinningScheme bins = BinningScheme::defaults();
  WeightTable weights = WeightTable::defaults();
  double min_distance_threshold = 1.0;  // m, inclusive
  double min_pttc_threshold = 0.7;      // s, inclusive
  int composite_threshold = 4;          // inclusive
  std::map<std::string, std::string> provenance = {{"config_source", "builtin-default"}};

  static PredictorConfig defaults() { return {}; }
  static PredictorConfig from_json_file(const std::filesystem::path& path);
  std::string to_json_string() const;
  void save_json(const std::filesystem::path& path) const;

  void validate() const;
};

// value = 1 iff d_min >= threshold; not applicable when d_min is missing.
Prediction predict_min_distance(std::optional<double> d_min, const PredictorConfig& config);

// value = 1 iff t_p >= threshold. Trials that never approach carry
// t_p = +infinity and predict comfortable.
Prediction predict_min_pttc(std::optional<double> t_p, const PredictorConfig& config);

struct CompositeScore {
  int score = 0;
  // variables that contributed weight 0 because their value was missing
  std::vector<Variable> missing;
};

// Sum of the six per-variable bin weights. The speed bin comes from the
// nearest nominal speed group; a never-approaching trial takes the top
// min-PTTC bin; any other missing variable contributes 0 and is recorded.
CompositeScore composite_score(const KinematicFeatures& features, const BinningScheme& scheme,
                               const WeightTable& weights);

// value = 1 iff score >= threshold.
Prediction predict_composite(int score, const PredictorConfig& config);

std::map<PredictorKind, Prediction> predict_all(const KinematicFeatures& features,
                                                const PredictorConfig& config);

}  // namespace pedcomfort
