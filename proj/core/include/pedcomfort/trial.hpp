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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pedcomfort/trajectory.hpp"

namespace pedcomfort {

// The two nominal robot speed conditions (1.4 m/s and 2.8 m/s).
enum class SpeedGroup { R14, R28 };

double nominal_speed(SpeedGroup group);
SpeedGroup nearest_speed_group(double speed);
std::string to_string(SpeedGroup group);
SpeedGroup parse_speed_group(std::string_view text);

// One robot-pedestrian encounter: two world-frame trajectories plus the
// trial metadata and the reported comfort rating (1..5 Likert).
//
// `lateral_valid = false` marks trials whose lateral-distance measurement
// failed; they stay in the dataset and are skipped only by analyses that
// need the lateral distance.
struct TrialRecord {
  std::string trial_id;
  std::string participant_id;
  int trial_index = 1;  // 1..5
  SpeedGroup speed_group = SpeedGroup::R14;
  Trajectory robot;
  Trajectory pedestrian;
  std::optional<int> reported_comfort;  // 1..5 when present
  bool lateral_valid = true;
};

enum class ViolationCode {
  too_few_samples,
  non_monotone_time,
  nonfinite_sample,
  missing_comfort,
  comfort_out_of_range,
  trial_index_out_of_range,
};

const char* violation_name(ViolationCode code);

struct Violation {
  ViolationCode code;
  std::string message;
};

// Empty result iff every TrialRecord invariant holds. Violations are data,
// not errors; loading rejects trials that fail here.
std::vector<Violation> validate_trial(const TrialRecord& trial);

struct EncounterDataset {
  std::vector<TrialRecord> trials;
  std::map<std::string, std::string> provenance;

  const TrialRecord* find(std::string_view trial_id) const;
};

}  // namespace pedcomfort
