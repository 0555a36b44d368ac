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
#include <optional>
#include <vector>

#include "pedcomfort/predictors.hpp"
#include "pedcomfort/trial.hpp"

namespace pedcomfort {

// Hallway encounter: the robot walks +x from the origin, the pedestrian
// walks -x from (approach_length, lateral_offset). A positive
// avoidance_radius inserts a symmetric arc-arc-arc swerve (all arcs of that
// radius, so the maximum path curvature is exactly 1/radius) centered at
// the nominal passing point and bending away from the pedestrian's lane.
// Speed stays constant through the swerve.
struct ScenarioConfig {
  double hallway_width = 3.2;   // m
  double robot_speed = 1.4;     // m/s
  double ped_speed = 1.4;       // m/s
  double approach_length = 12.0;  // m, initial separation along x
  double lateral_offset = 0.0;  // m, signed pedestrian lane offset
  double avoidance_radius = 0.0;  // m, 0 disables the swerve
  double swerve_angle = 0.5;    // rad, heading sweep of the entry arc
  double noise_sigma = 0.0;     // m, Gaussian position noise
  double dt = 0.05;             // s, sampling interval
  double duration = 0.0;        // s, 0 = twice the nominal meeting time
  std::uint64_t seed = 0;
  bool emit_velocities = true;  // write exact velocities, or leave them to be derived

  void validate() const;
  double effective_duration() const;
};

// Noise-free feature values implied by the scenario; d_min, d_lat, t_p and
// d_tp come from a fine-grid (dt/100) sweep of the exact continuous state.
struct GroundTruth {
  double v = 0.0;
  double d_min = 0.0;
  std::optional<double> d_lat;
  double rho = 0.0;
  std::optional<double> t_p;
  std::optional<double> d_tp;
  bool never_approaching = false;
};

struct GeneratedTrial {
  TrialRecord trial;  // reported_comfort unset; ids left for the caller
  GroundTruth truth;
};

GeneratedTrial generate_encounter(const ScenarioConfig& config);

// Closed-form minimum of |p0 + t * v_rel| over t in [0, t_end] for the
// straight (no swerve) scenario.
double analytic_min_distance(const Vec2& p0, const Vec2& v_rel, double t_end);
double analytic_min_distance(const ScenarioConfig& config);

struct AnalyticPttc {
  std::optional<double> t_p;
  std::optional<double> d_tp;
  bool never_approaching = false;
};

// Brute-force oracle: evaluates the PTTC formula on the exact continuous
// relative state over a dt/100 grid.
AnalyticPttc analytic_min_pttc(const ScenarioConfig& config);

// Scenario sweep: per-trial values cycle through the listed speeds (one
// speed per participant), offsets and radii.
struct SweepSpec {
  ScenarioConfig base;
  std::vector<double> speeds = {1.4, 2.8};
  std::vector<double> lateral_offsets = {0.9};
  std::vector<double> avoidance_radii = {0.0};
  int trials_per_participant = 5;
  double label_noise = 0.6;

  static SweepSpec from_json_file(const std::filesystem::path& path);
  std::string to_json_string() const;
};

// Deterministic synthetic dataset with comfort labels from a logistic rule
// on the composite score (flagged `synthetic-label` in provenance; not
// human data). Trajectories satisfy every encounter-model invariant.
EncounterDataset simulate_dataset(const SweepSpec& spec, int n_trials, std::uint64_t seed);

}  // namespace pedcomfort
