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

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "pedcomfort/trial.hpp"

namespace pedcomfort {

// Every extracted feature value is reproducible from (data, params); the
// record is serialized alongside feature output.
struct FeatureParams {
  double dt = 0.05;            // resampling interval, seconds
  int smoothing_window = 5;    // odd; 1 disables position smoothing
  double v_floor = 0.1;        // m/s; curvature samples below this are excluded
  double eps_closing = 1e-6;   // m/s; closing speeds below this count as non-approaching
  double eps_dist = 1e-6;      // m; separations below this count as collision
};

// Pedestrian state relative to the robot at one aligned timestamp.
struct RelativeState {
  double t = 0.0;
  Vec2 p_rel;   // pedestrian position minus robot position
  Vec2 v_rel;   // pedestrian velocity minus robot velocity
  double dist = 0.0;  // |p_rel|
};

// Projected time-to-collision sample; +inf marks a non-approaching state.
struct PttcSample {
  double t = 0.0;
  double pttc = 0.0;
  bool collision = false;  // separation under eps_dist; pttc fixed to 0
};

struct PttcSeries {
  std::vector<PttcSample> samples;

  bool any_finite() const;
};

enum class FeatureFlag {
  lateral_excluded,      // trial marked lateral_valid = false
  no_passing_moment,     // longitudinal component never crossed zero
  heading_unavailable,
  never_approaching,     // no finite PTTC sample
  collision,             // some sample closer than eps_dist
  curvature_degenerate,  // all samples below the speed floor
  speed_group_mismatch,  // measured speed classifies into the other group
  speed_implausible,     // measured speed near neither nominal speed
};

const char* feature_flag_name(FeatureFlag flag);
std::optional<FeatureFlag> parse_feature_flag(std::string_view name);

// Serialized as ';'-joined flag names in enum order.
std::string format_flags(const std::set<FeatureFlag>& flags);
std::set<FeatureFlag> parse_flags(std::string_view text);

// The six per-trial kinematic variables. Missing values stay missing and
// are never encoded as 0.
struct KinematicFeatures {
  std::optional<double> v;      // mean robot speed, m/s
  std::optional<double> d_min;  // minimum separation, m
  std::optional<double> d_lat;  // lateral distance at the passing moment, m
  std::optional<double> rho;    // maximum path curvature, 1/m
  std::optional<double> t_p;    // minimum PTTC, s
  std::optional<double> d_tp;   // separation at the minimum-PTTC instant, m
  std::set<FeatureFlag> flags;
};

// Uniform-rate copy of `traj` at interval dt over its own time span.
// Positions are linearly interpolated and optionally smoothed with a
// centered moving average (the window shrinks symmetrically at the ends);
// missing velocities are derived by central finite differences.
Trajectory resample_and_derive(const Trajectory& traj, double dt, int smoothing_window);

// Aligns the two trajectories on a shared uniform grid over the overlap of
// their time ranges and differences them. Throws NoTemporalOverlap when the
// overlap holds fewer than two grid points.
std::vector<RelativeState> relative_series(const TrialRecord& trial,
                                           const FeatureParams& params = {});

struct MinDistanceResult {
  double distance = 0.0;
  double t = 0.0;  // argmin time
};

MinDistanceResult min_distance(std::span<const RelativeState> rel);

// Lateral component of the separation at the passing moment: the instant
// the pedestrian's longitudinal coordinate in the robot-heading frame
// crosses from ahead (positive) to behind, located by linear interpolation
// between the bracketing samples. nullopt when no crossing occurs.
std::optional<double> lateral_distance(const TrialRecord& trial, const FeatureParams& params = {});

// Max over samples of |x'y'' - y'x''| / (x'^2 + y'^2)^(3/2) by central
// finite differences. Expects a uniformly resampled (and, for noisy data,
// smoothed) trajectory. Samples slower than v_floor are excluded.
double max_curvature(const Trajectory& traj, const FeatureParams& params = {});

PttcSeries pttc_series(std::span<const RelativeState> rel, const FeatureParams& params = {});

struct MinPttcResult {
  double t_p = 0.0;   // minimum finite PTTC value, seconds
  double d_tp = 0.0;  // separation at that sample
  std::size_t index = 0;
};

// Throws NeverApproaching when the series holds no finite entry.
MinPttcResult min_pttc_and_distance(std::span<const RelativeState> rel, const PttcSeries& pttc);

struct SpeedEstimate {
  double mean = 0.0;
  SpeedGroup nearest = SpeedGroup::R14;
  bool plausible = false;  // within 25% of the nearest nominal speed
};

SpeedEstimate mean_speed(const Trajectory& traj);

// Full pipeline: align, then compute all six variables. Per-feature
// failures become flags; only a missing temporal overlap fails the trial.
KinematicFeatures extract_features(const TrialRecord& trial, const FeatureParams& params = {});

}  // namespace pedcomfort
