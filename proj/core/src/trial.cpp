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

#include "pedcomfort/trial.hpp"

#include <cmath>

#include "pedcomfort/errors.hpp"

namespace pedcomfort {

double nominal_speed(SpeedGroup group) { return group == SpeedGroup::R14 ? 1.4 : 2.8; }

SpeedGroup nearest_speed_group(double speed) {
  return std::abs(speed - 1.4) <= std::abs(speed - 2.8) ? SpeedGroup::R14 : SpeedGroup::R28;
}

std::string to_string(SpeedGroup group) { return group == SpeedGroup::R14 ? "R14" : "R28"; }

SpeedGroup parse_speed_group(std::string_view text) {
  if (text == "R14") return SpeedGroup::R14;
  if (text == "R28") return SpeedGroup::R28;
  throw Error(Errc::unknown_speed_group, "expected R14 or R28, got '" + std::string(text) + "'");
}

const char* violation_name(ViolationCode code) {
  switch (code) {
    case ViolationCode::too_few_samples: return "TooFewSamples";
    case ViolationCode::non_monotone_time: return "NonMonotoneTime";
    case ViolationCode::nonfinite_sample: return "NonFiniteSample";
    case ViolationCode::missing_comfort: return "MissingComfort";
    case ViolationCode::comfort_out_of_range: return "ComfortOutOfRange";
    case ViolationCode::trial_index_out_of_range: return "TrialIndexOutOfRange";
  }
  return "Unknown";
}

namespace {

void check_trajectory(const Trajectory& traj, const std::string& which,
                      std::vector<Violation>& out) {
  if (traj.size() < 2) {
    out.push_back({ViolationCode::too_few_samples,
                   which + " trajectory has " + std::to_string(traj.size()) +
                       " samples, need at least 2"});
  }
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& s = traj.samples[i];
    bool finite = std::isfinite(s.t) && std::isfinite(s.position.x) && std::isfinite(s.position.y);
    if (s.velocity) finite = finite && std::isfinite(s.velocity->x) && std::isfinite(s.velocity->y);
    if (s.heading) finite = finite && std::isfinite(*s.heading);
    if (!finite) {
      out.push_back({ViolationCode::nonfinite_sample,
                     which + " trajectory sample " + std::to_string(i) + " is not finite"});
      break;
    }
  }
  for (std::size_t i = 1; i < traj.size(); ++i) {
    if (!(traj.samples[i].t > traj.samples[i - 1].t)) {
      out.push_back({ViolationCode::non_monotone_time,
                     which + " trajectory timestamps not strictly increasing at sample " +
                         std::to_string(i)});
      break;
    }
  }
}

}  // namespace

std::vector<Violation> validate_trial(const TrialRecord& trial) {
  std::vector<Violation> violations;
  check_trajectory(trial.robot, "robot", violations);
  check_trajectory(trial.pedestrian, "pedestrian", violations);
  if (!trial.reported_comfort) {
    violations.push_back({ViolationCode::missing_comfort,
                          "trial " + trial.trial_id + " has no reported comfort"});
  } else if (*trial.reported_comfort < 1 || *trial.reported_comfort > 5) {
    violations.push_back({ViolationCode::comfort_out_of_range,
                          "trial " + trial.trial_id + " reported comfort " +
                              std::to_string(*trial.reported_comfort) + " outside 1..5"});
  }
  if (trial.trial_index < 1 || trial.trial_index > 5) {
    violations.push_back({ViolationCode::trial_index_out_of_range,
                          "trial " + trial.trial_id + " trial index " +
                              std::to_string(trial.trial_index) + " outside 1..5"});
  }
  return violations;
}

const TrialRecord* EncounterDataset::find(std::string_view trial_id) const {
  for (const auto& trial : trials) {
    if (trial.trial_id == trial_id) return &trial;
  }
  return nullptr;
}

}  // namespace pedcomfort
