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

#include "pedcomfort/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pedcomfort/errors.hpp"

namespace pedcomfort {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Linear interpolation over samples; `index_hint` walks forward so a full
// resampling pass stays linear.
struct Interpolator {
  const std::vector<TrajectorySample>& samples;
  std::size_t hint = 0;

  std::size_t segment_for(double t) {
    while (hint + 2 < samples.size() && samples[hint + 1].t <= t) ++hint;
    return hint;
  }
};

std::vector<Vec2> moving_average(const std::vector<Vec2>& points, int window) {
  if (window <= 1) return points;
  const int half = (window - 1) / 2;
  const int n = static_cast<int>(points.size());
  std::vector<Vec2> out(points.size());
  for (int i = 0; i < n; ++i) {
    const int k = std::min({half, i, n - 1 - i});
    Vec2 acc;
    for (int j = i - k; j <= i + k; ++j) acc += points[j];
    out[i] = acc / static_cast<double>(2 * k + 1);
  }
  return out;
}

// np.gradient-style derivative on a uniform grid: central differences in
// the interior, one-sided at the ends.
std::vector<Vec2> gradient(const std::vector<Vec2>& values, double dt) {
  const std::size_t n = values.size();
  std::vector<Vec2> out(n);
  if (n < 2) return out;
  out[0] = (values[1] - values[0]) / dt;
  out[n - 1] = (values[n - 1] - values[n - 2]) / dt;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out[i] = (values[i + 1] - values[i - 1]) / (2.0 * dt);
  }
  return out;
}

// Resamples onto the explicit grid t0 + k*dt, k in [0, count). All output
// samples carry velocity; heading is carried over when the input has it.
Trajectory resample_on_grid(const Trajectory& traj, double t0, std::size_t count, double dt,
                            int smoothing_window) {
  if (traj.size() < 2) {
    throw Error(Errc::too_few_samples,
                "resampling needs at least 2 samples, got " + std::to_string(traj.size()));
  }
  if (!(dt > 0.0)) {
    throw Error(Errc::invalid_config, "resampling interval must be positive");
  }
  if (smoothing_window < 1 || smoothing_window % 2 == 0) {
    throw Error(Errc::invalid_config, "smoothing window must be a positive odd integer");
  }

  const bool have_velocity = traj.has_velocities();
  const bool have_heading = traj.has_headings();

  // Unwrap headings so linear interpolation never crosses the +-pi seam.
  std::vector<double> unwrapped;
  if (have_heading) {
    unwrapped.resize(traj.size());
    unwrapped[0] = *traj.samples[0].heading;
    for (std::size_t i = 1; i < traj.size(); ++i) {
      const double delta = wrap_angle(*traj.samples[i].heading - *traj.samples[i - 1].heading);
      unwrapped[i] = unwrapped[i - 1] + delta;
    }
  }

  std::vector<Vec2> positions(count);
  std::vector<Vec2> velocities(count);
  std::vector<double> headings(count);

  Interpolator interp{traj.samples};
  for (std::size_t k = 0; k < count; ++k) {
    const double t = t0 + static_cast<double>(k) * dt;
    const std::size_t i = interp.segment_for(t);
    const auto& s0 = traj.samples[i];
    const auto& s1 = traj.samples[i + 1];
    const double alpha = std::clamp((t - s0.t) / (s1.t - s0.t), 0.0, 1.0);
    positions[k] = s0.position + (s1.position - s0.position) * alpha;
    if (have_velocity) {
      velocities[k] = *s0.velocity + (*s1.velocity - *s0.velocity) * alpha;
    }
    if (have_heading) {
      headings[k] = unwrapped[i] + (unwrapped[i + 1] - unwrapped[i]) * alpha;
    }
  }

  positions = moving_average(positions, smoothing_window);
  if (!have_velocity) {
    velocities = gradient(positions, dt);
  }

  Trajectory out;
  out.frame_id = traj.frame_id;
  out.samples.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    auto& s = out.samples[k];
    s.t = t0 + static_cast<double>(k) * dt;
    s.position = positions[k];
    s.velocity = velocities[k];
    if (have_heading) s.heading = wrap_angle(headings[k]);
  }
  return out;
}

struct AlignedPair {
  Trajectory robot;
  Trajectory pedestrian;
  std::vector<RelativeState> rel;
};

AlignedPair align(const TrialRecord& trial, const FeatureParams& params) {
  if (trial.robot.size() < 2 || trial.pedestrian.size() < 2) {
    throw Error(Errc::too_few_samples, "trial " + trial.trial_id +
                                           ": both trajectories need at least 2 samples");
  }
  const double t0 = std::max(trial.robot.start_time(), trial.pedestrian.start_time());
  const double t1 = std::min(trial.robot.end_time(), trial.pedestrian.end_time());
  const double span = t1 - t0;
  const std::size_t count =
      span < 0.0 ? 0 : static_cast<std::size_t>(std::floor(span / params.dt + 1e-9)) + 1;
  if (count < 2) {
    throw Error(Errc::no_temporal_overlap,
                "trial " + trial.trial_id + ": trajectories share fewer than two grid points");
  }
  AlignedPair pair;
  pair.robot = resample_on_grid(trial.robot, t0, count, params.dt, params.smoothing_window);
  pair.pedestrian =
      resample_on_grid(trial.pedestrian, t0, count, params.dt, params.smoothing_window);
  pair.rel.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    auto& r = pair.rel[k];
    r.t = pair.robot.samples[k].t;
    r.p_rel = pair.pedestrian.samples[k].position - pair.robot.samples[k].position;
    r.v_rel = *pair.pedestrian.samples[k].velocity - *pair.robot.samples[k].velocity;
    r.dist = r.p_rel.norm();
  }
  return pair;
}

// Unit heading direction per sample: explicit heading when recorded,
// otherwise the velocity direction, holding the last known direction
// through stops. nullopt if the direction is never defined.
std::optional<std::vector<Vec2>> heading_directions(const Trajectory& traj) {
  const std::size_t n = traj.size();
  std::vector<Vec2> dirs(n);
  std::vector<bool> known(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = traj.samples[i];
    if (s.heading) {
      dirs[i] = {std::cos(*s.heading), std::sin(*s.heading)};
      known[i] = true;
    } else if (s.velocity) {
      const double speed = s.velocity->norm();
      if (speed > 1e-9) {
        dirs[i] = *s.velocity / speed;
        known[i] = true;
      }
    }
  }
  std::size_t first_known = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (known[i]) {
      first_known = i;
      break;
    }
  }
  if (first_known == n) return std::nullopt;
  for (std::size_t i = first_known + 1; i < n; ++i) {
    if (!known[i]) dirs[i] = dirs[i - 1];
  }
  for (std::size_t i = first_known; i-- > 0;) {
    dirs[i] = dirs[i + 1];
  }
  return dirs;
}

std::optional<double> lateral_at_crossing(const std::vector<RelativeState>& rel,
                                          const std::vector<Vec2>& dirs) {
  for (std::size_t i = 0; i + 1 < rel.size(); ++i) {
    const double lon0 = rel[i].p_rel.dot(dirs[i]);
    const double lon1 = rel[i + 1].p_rel.dot(dirs[i + 1]);
    if (lon0 > 0.0 && lon1 <= 0.0) {
      const double lat0 = dirs[i].cross(rel[i].p_rel);
      const double lat1 = dirs[i + 1].cross(rel[i + 1].p_rel);
      const double alpha = lon0 / (lon0 - lon1);
      return std::abs(lat0 + alpha * (lat1 - lat0));
    }
  }
  return std::nullopt;
}

}  // namespace

bool PttcSeries::any_finite() const {
  for (const auto& s : samples) {
    if (std::isfinite(s.pttc)) return true;
  }
  return false;
}

const char* feature_flag_name(FeatureFlag flag) {
  switch (flag) {
    case FeatureFlag::lateral_excluded: return "lateral_excluded";
    case FeatureFlag::no_passing_moment: return "no_passing_moment";
    case FeatureFlag::heading_unavailable: return "heading_unavailable";
    case FeatureFlag::never_approaching: return "never_approaching";
    case FeatureFlag::collision: return "collision";
    case FeatureFlag::curvature_degenerate: return "curvature_degenerate";
    case FeatureFlag::speed_group_mismatch: return "speed_group_mismatch";
    case FeatureFlag::speed_implausible: return "speed_implausible";
  }
  return "unknown";
}

std::optional<FeatureFlag> parse_feature_flag(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(FeatureFlag::speed_implausible); ++i) {
    const auto flag = static_cast<FeatureFlag>(i);
    if (name == feature_flag_name(flag)) return flag;
  }
  return std::nullopt;
}

std::string format_flags(const std::set<FeatureFlag>& flags) {
  std::string out;
  for (const auto flag : flags) {
    if (!out.empty()) out += ';';
    out += feature_flag_name(flag);
  }
  return out;
}

std::set<FeatureFlag> parse_flags(std::string_view text) {
  std::set<FeatureFlag> flags;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    const auto token = text.substr(start, end - start);
    if (!token.empty()) {
      const auto flag = parse_feature_flag(token);
      if (!flag) {
        throw Error(Errc::bad_field, "unknown feature flag '" + std::string(token) + "'");
      }
      flags.insert(*flag);
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return flags;
}

Trajectory resample_and_derive(const Trajectory& traj, double dt, int smoothing_window) {
  if (traj.size() < 2) {
    throw Error(Errc::too_few_samples,
                "resampling needs at least 2 samples, got " + std::to_string(traj.size()));
  }
  const double span = traj.duration();
  const std::size_t count = static_cast<std::size_t>(std::floor(span / dt + 1e-9)) + 1;
  return resample_on_grid(traj, traj.start_time(), count, dt, smoothing_window);
}

std::vector<RelativeState> relative_series(const TrialRecord& trial, const FeatureParams& params) {
  return align(trial, params).rel;
}

MinDistanceResult min_distance(std::span<const RelativeState> rel) {
  if (rel.empty()) {
    throw Error(Errc::empty_series, "minimum distance of an empty series");
  }
  MinDistanceResult best{rel[0].dist, rel[0].t};
  for (const auto& state : rel) {
    if (state.dist < best.distance) {
      best = {state.dist, state.t};
    }
  }
  return best;
}

std::optional<double> lateral_distance(const TrialRecord& trial, const FeatureParams& params) {
  const AlignedPair pair = align(trial, params);
  const auto dirs = heading_directions(pair.robot);
  if (!dirs) {
    throw Error(Errc::heading_unavailable,
                "trial " + trial.trial_id + ": robot heading neither recorded nor derivable");
  }
  return lateral_at_crossing(pair.rel, *dirs);
}

double max_curvature(const Trajectory& traj, const FeatureParams& params) {
  if (traj.size() < 4) {
    throw Error(Errc::too_few_samples,
                "curvature needs at least 4 samples, got " + std::to_string(traj.size()));
  }
  const double dt = traj.samples[1].t - traj.samples[0].t;
  for (std::size_t i = 1; i < traj.size(); ++i) {
    if (std::abs(traj.samples[i].t - traj.samples[i - 1].t - dt) > 1e-6 * std::max(dt, 1.0)) {
      throw Error(Errc::bad_format, "curvature expects a uniformly resampled trajectory");
    }
  }
  std::vector<Vec2> positions(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) positions[i] = traj.samples[i].position;
  const auto d1 = gradient(positions, dt);
  const auto d2 = gradient(d1, dt);

  double best = -1.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double speed2 = d1[i].squared_norm();
    if (speed2 < params.v_floor * params.v_floor) continue;
    const double kappa = std::abs(d1[i].cross(d2[i])) / (speed2 * std::sqrt(speed2));
    best = std::max(best, kappa);
  }
  if (best < 0.0) {
    throw Error(Errc::degenerate_trajectory, "all samples below the curvature speed floor");
  }
  return best;
}

PttcSeries pttc_series(std::span<const RelativeState> rel, const FeatureParams& params) {
  if (rel.empty()) {
    throw Error(Errc::empty_series, "PTTC of an empty series");
  }
  PttcSeries series;
  series.samples.reserve(rel.size());
  for (const auto& state : rel) {
    PttcSample sample;
    sample.t = state.t;
    if (state.dist < params.eps_dist) {
      sample.pttc = 0.0;
      sample.collision = true;
    } else {
      const double closing = -state.p_rel.dot(state.v_rel) / state.dist;
      sample.pttc = closing > params.eps_closing ? state.dist / closing : kInf;
    }
    series.samples.push_back(sample);
  }
  return series;
}

MinPttcResult min_pttc_and_distance(std::span<const RelativeState> rel, const PttcSeries& pttc) {
  if (rel.size() != pttc.samples.size()) {
    throw Error(Errc::length_mismatch, "relative series and PTTC series differ in length");
  }
  std::optional<MinPttcResult> best;
  for (std::size_t i = 0; i < pttc.samples.size(); ++i) {
    const double value = pttc.samples[i].pttc;
    if (!std::isfinite(value)) continue;
    if (!best || value < best->t_p) {
      best = MinPttcResult{value, rel[i].dist, i};
    }
  }
  if (!best) {
    throw Error(Errc::never_approaching, "no finite PTTC sample in the series");
  }
  return *best;
}

SpeedEstimate mean_speed(const Trajectory& traj) {
  if (traj.size() < 2) {
    throw Error(Errc::too_few_samples, "mean speed needs at least 2 samples");
  }
  double acc = 0.0;
  if (traj.has_velocities()) {
    for (const auto& s : traj.samples) acc += s.velocity->norm();
  } else {
    // Non-uniform central differences on positions.
    const auto& s = traj.samples;
    const std::size_t n = s.size();
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t lo = i == 0 ? 0 : i - 1;
      const std::size_t hi = i + 1 == n ? i : i + 1;
      acc += (s[hi].position - s[lo].position).norm() / (s[hi].t - s[lo].t);
    }
  }
  SpeedEstimate est;
  est.mean = acc / static_cast<double>(traj.size());
  est.nearest = nearest_speed_group(est.mean);
  est.plausible = std::abs(est.mean - nominal_speed(est.nearest)) <= 0.25 * nominal_speed(est.nearest);
  return est;
}

KinematicFeatures extract_features(const TrialRecord& trial, const FeatureParams& params) {
  const AlignedPair pair = align(trial, params);
  KinematicFeatures features;

  const SpeedEstimate speed = mean_speed(pair.robot);
  features.v = speed.mean;
  if (!speed.plausible) features.flags.insert(FeatureFlag::speed_implausible);
  if (speed.nearest != trial.speed_group) features.flags.insert(FeatureFlag::speed_group_mismatch);

  features.d_min = min_distance(pair.rel).distance;

  if (!trial.lateral_valid) {
    features.flags.insert(FeatureFlag::lateral_excluded);
  } else {
    const auto dirs = heading_directions(pair.robot);
    if (!dirs) {
      features.flags.insert(FeatureFlag::heading_unavailable);
    } else {
      features.d_lat = lateral_at_crossing(pair.rel, *dirs);
      if (!features.d_lat) features.flags.insert(FeatureFlag::no_passing_moment);
    }
  }

  try {
    features.rho = max_curvature(pair.robot, params);
  } catch (const Error& e) {
    if (e.code() != Errc::degenerate_trajectory) throw;
    features.flags.insert(FeatureFlag::curvature_degenerate);
  }

  const PttcSeries pttc = pttc_series(pair.rel, params);
  for (const auto& sample : pttc.samples) {
    if (sample.collision) {
      features.flags.insert(FeatureFlag::collision);
      break;
    }
  }
  try {
    const MinPttcResult mp = min_pttc_and_distance(pair.rel, pttc);
    features.t_p = mp.t_p;
    features.d_tp = mp.d_tp;
  } catch (const Error& e) {
    if (e.code() != Errc::never_approaching) throw;
    features.flags.insert(FeatureFlag::never_approaching);
  }

  return features;
}

}  // namespace pedcomfort
