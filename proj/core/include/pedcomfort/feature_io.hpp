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

#include <filesystem>
#include <string>
#include <vector>

#include "pedcomfort/kinematics.hpp"

namespace pedcomfort {

struct FeatureRow {
  std::string trial_id;
  KinematicFeatures features;
};

// Columns: trial_id,v,d_min,d_lat,rho,t_p,d_tp,flags. Missing values stay
// empty cells; flags are ';'-joined names.
std::string features_to_csv(const std::vector<FeatureRow>& rows);
void write_features_csv(const std::vector<FeatureRow>& rows, const std::filesystem::path& path);
std::vector<FeatureRow> read_features_csv(const std::filesystem::path& path);

struct LabelRow {
  std::string trial_id;
  int reported_comfort = 0;
};

// Columns: trial_id,reported_comfort.
std::string labels_to_csv(const std::vector<LabelRow>& rows);
void write_labels_csv(const std::vector<LabelRow>& rows, const std::filesystem::path& path);
std::vector<LabelRow> read_labels_csv(const std::filesystem::path& path);

}  // namespace pedcomfort
