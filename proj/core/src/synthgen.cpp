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

#include "pedcomfort/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "pedcomfort/errors.hpp"
#include "rng.hpp"

namespace pedcomfort {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct PathSegment {
  double start_s = 0.0;   // arc length where the segment begins
  double length = 0.0;    // +inf for the trailing straight
  double curvature = 0.0;
  Vec2 start_position;
  double start_heading = 0.0;
};

struct PathState {
  Vec2 position;
  double heading = 0.0;
  double curvature = 0.0;
};

// Piecewise line/arc path with closed-form evaluation.
class PlanarPath {
 public:
  void add_segment(double length, double curvature) {
    PathSegment seg;
    if (segments_.empty()) {
      seg.start_s = 0.0;
      seg.start_position = {0.0, 0.0};
      seg.start_heading = 0.0;
    } else {
      const auto& prev = segments_.back();
      seg.start_s = prev.start_s + prev.length;
      const PathState end = evaluate_segment(prev, prev.length);
      seg.start_position = end.position;
      seg.start_heading = end.heading;
    }
    seg.length = length;
    seg.curvature = curvature;
    segments_.push_back(seg);
  }

  PathState at(double s) const {
    const PathSegment* seg = &segments_.front();
    for (const auto& candidate : segments_) {
      if (s >= candidate.start_s) seg = &candidate;
    }
    return evaluate_segment(*seg, std::min(s - seg->start_s, seg->length));
  }

  double max_curvature_in(double s_end) const {
    double best = 0.0;
    for (const auto& seg : segments_) {
      if (seg.start_s < s_end && seg.length > 0.0) {
        best = std::max(best, std::abs(seg.curvature));
      }
    }
    return best;
  }

 private:
  static PathState evaluate_segment(const PathSegment& seg, double ds) {
    PathState state;
    state.curvature = seg.curvature;
    if (seg.curvature == 0.0) {
      state.heading = seg.start_heading;
      state.position = seg.start_position +
                       Vec2{std::cos(seg.start_heading), std::sin(seg.start_heading)} * ds;
    } else {
      const double c = seg.curvature;
      const double psi0 = seg.start_heading;
      const double psi1 = psi0 + c * ds;
      state.heading = psi1;
      state.position = seg.start_position +
                       Vec2{(std::sin(psi1) - std::sin(psi0)) / c,
                            -(std::cos(psi1) - std::cos(psi0)) / c};
    }
    return state;
  }

  std::vector<PathSegment> segments_;
};

struct Scene {
  PlanarPath robot_path;
  double duration = 0.0;

  const ScenarioConfig* config = nullptr;

  PathState robot_at(double t) const { return robot_path.at(config->robot_speed * t); }
  Vec2 robot_velocity(double t) const {
    const PathState s = robot_at(t);
    return Vec2{std::cos(s.heading), std::sin(s.heading)} * config->robot_speed;
  }
  Vec2 pedestrian_at(double t) const {
    return {config->approach_length - config->ped_speed * t, config->lateral_offset};
  }
  Vec2 pedestrian_velocity() const { return {-config->ped_speed, 0.0}; }
};

Scene build_scene(const ScenarioConfig& config) {
  Scene scene;
  scene.config = &config;
  scene.duration = config.effective_duration();

  if (config.avoidance_radius > 0.0) {
    const double r = config.avoidance_radius;
    const double theta = config.swerve_angle;
    const double bump_length = 4.0 * r * theta;
    const double closing = config.robot_speed + config.ped_speed;
    const double s_pass = closing > 0.0
                              ? config.robot_speed * (config.approach_length / closing)
                              : config.robot_speed * scene.duration / 2.0;
    const double s_start = s_pass - bump_length / 2.0;
    const double path_length = config.robot_speed * scene.duration;
    if (s_start < 0.0 || s_start + bump_length > path_length) {
      throw Error(Errc::invalid_config,
                  "avoidance swerve does not fit inside the encounter; shorten the swerve or "
                  "extend the approach");
    }
    // Bend away from the pedestrian's lane and come back; heading and
    // lateral position return to the corridor axis.
    const double bend = config.lateral_offset >= 0.0 ? -1.0 : 1.0;
    const double kappa = 1.0 / r;
    scene.robot_path.add_segment(s_start, 0.0);
    scene.robot_path.add_segment(r * theta, bend * kappa);
    scene.robot_path.add_segment(2.0 * r * theta, -bend * kappa);
    scene.robot_path.add_segment(r * theta, bend * kappa);
    scene.robot_path.add_segment(kInf, 0.0);
  } else {
    scene.robot_path.add_segment(kInf, 0.0);
  }
  return scene;
}

struct FineState {
  double t = 0.0;
  Vec2 p_rel;
  Vec2 v_rel;
  double dist = 0.0;
  double robot_heading = 0.0;
};

std::vector<FineState> fine_grid(const Scene& scene, double step) {
  const std::size_t count = static_cast<std::size_t>(std::floor(scene.duration / step)) + 1;
  std::vector<FineState> states(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = static_cast<double>(k) * step;
    const PathState robot = scene.robot_at(t);
    FineState s;
    s.t = t;
    s.p_rel = scene.pedestrian_at(t) - robot.position;
    s.v_rel = scene.pedestrian_velocity() - scene.robot_velocity(t);
    s.dist = s.p_rel.norm();
    s.robot_heading = robot.heading;
    states[k] = s;
  }
  return states;
}

GroundTruth ground_truth(const Scene& scene) {
  const ScenarioConfig& config = *scene.config;
  GroundTruth truth;
  truth.v = config.robot_speed;
  truth.rho = config.avoidance_radius > 0.0 ? 1.0 / config.avoidance_radius : 0.0;

  const auto states = fine_grid(scene, config.dt / 100.0);

  truth.d_min = kInf;
  for (const auto& s : states) truth.d_min = std::min(truth.d_min, s.dist);

  // Passing moment: longitudinal coordinate in the robot-heading frame
  // crosses from ahead to behind.
  for (std::size_t i = 0; i + 1 < states.size(); ++i) {
    const Vec2 u0{std::cos(states[i].robot_heading), std::sin(states[i].robot_heading)};
    const Vec2 u1{std::cos(states[i + 1].robot_heading), std::sin(states[i + 1].robot_heading)};
    const double lon0 = states[i].p_rel.dot(u0);
    const double lon1 = states[i + 1].p_rel.dot(u1);
    if (lon0 > 0.0 && lon1 <= 0.0) {
      const double lat0 = u0.cross(states[i].p_rel);
      const double lat1 = u1.cross(states[i + 1].p_rel);
      const double alpha = lon0 / (lon0 - lon1);
      truth.d_lat = std::abs(lat0 + alpha * (lat1 - lat0));
      break;
    }
  }

  double best_pttc = kInf;
  for (const auto& s : states) {
    if (s.dist < 1e-9) {
      best_pttc = 0.0;
      truth.d_tp = s.dist;
      truth.t_p = 0.0;
      break;
    }
    const double closing = -s.p_rel.dot(s.v_rel) / s.dist;
    if (closing > 1e-9) {
      const double pttc = s.dist / closing;
      if (pttc < best_pttc) {
        best_pttc = pttc;
        truth.t_p = pttc;
        truth.d_tp = s.dist;
      }
    }
  }
  truth.never_approaching = !truth.t_p.has_value();
  return truth;
}

}  // namespace

void ScenarioConfig::validate() const {
  if (!(hallway_width > 0.0)) throw Error(Errc::invalid_config, "hallway width must be positive");
  if (robot_speed < 0.0 || ped_speed < 0.0) {
    throw Error(Errc::invalid_config, "speeds must be non-negative");
  }
  if (!(dt > 0.0)) throw Error(Errc::invalid_config, "dt must be positive");
  if (!(approach_length > 0.0)) {
    throw Error(Errc::invalid_config, "approach length must be positive");
  }
  if (!(std::abs(lateral_offset) < hallway_width / 2.0)) {
    throw Error(Errc::invalid_config, "lateral offset must stay inside the hallway");
  }
  if (avoidance_radius < 0.0) {
    throw Error(Errc::invalid_config, "avoidance radius must be non-negative");
  }
  if (avoidance_radius > 0.0 && !(swerve_angle > 0.0 && swerve_angle < M_PI / 2.0)) {
    throw Error(Errc::invalid_config, "swerve angle must lie in (0, pi/2)");
  }
  if (noise_sigma < 0.0) throw Error(Errc::invalid_config, "noise sigma must be non-negative");
  if (duration < 0.0) throw Error(Errc::invalid_config, "duration must be non-negative");
  if (duration == 0.0 && robot_speed + ped_speed <= 0.0) {
    throw Error(Errc::invalid_config, "auto duration needs a positive closing speed");
  }
}

double ScenarioConfig::effective_duration() const {
  if (duration > 0.0) return duration;
  return 2.0 * approach_length / (robot_speed + ped_speed);
}

GeneratedTrial generate_encounter(const ScenarioConfig& config) {
  config.validate();
  const Scene scene = build_scene(config);

  GeneratedTrial out;
  out.truth = ground_truth(scene);

  const std::size_t count =
      static_cast<std::size_t>(std::floor(scene.duration / config.dt)) + 1;
  Trajectory robot, pedestrian;
  robot.samples.resize(count);
  pedestrian.samples.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = static_cast<double>(k) * config.dt;
    const PathState rs = scene.robot_at(t);
    auto& r = robot.samples[k];
    r.t = t;
    r.position = rs.position;
    r.heading = wrap_angle(rs.heading);
    if (config.emit_velocities) r.velocity = scene.robot_velocity(t);

    auto& p = pedestrian.samples[k];
    p.t = t;
    p.position = scene.pedestrian_at(t);
    if (config.emit_velocities) p.velocity = scene.pedestrian_velocity();
  }

  if (config.noise_sigma > 0.0) {
    Rng rng(config.seed);
    for (auto& s : robot.samples) {
      s.position.x += config.noise_sigma * rng.next_gaussian();
      s.position.y += config.noise_sigma * rng.next_gaussian();
    }
    for (auto& s : pedestrian.samples) {
      s.position.x += config.noise_sigma * rng.next_gaussian();
      s.position.y += config.noise_sigma * rng.next_gaussian();
    }
  }

  out.trial.trial_id = "synthetic";
  out.trial.participant_id = "synthetic";
  out.trial.trial_index = 1;
  out.trial.speed_group = nearest_speed_group(config.robot_speed);
  out.trial.robot = std::move(robot);
  out.trial.pedestrian = std::move(pedestrian);
  out.trial.lateral_valid = true;
  return out;
}

double analytic_min_distance(const Vec2& p0, const Vec2& v_rel, double t_end) {
  const double v2 = v_rel.squared_norm();
  double t_star = 0.0;
  if (v2 > 0.0) {
    t_star = std::clamp(-p0.dot(v_rel) / v2, 0.0, t_end);
  }
  return (p0 + v_rel * t_star).norm();
}

double analytic_min_distance(const ScenarioConfig& config) {
  if (config.avoidance_radius > 0.0) {
    throw Error(Errc::invalid_config,
                "closed-form minimum distance covers straight paths only; use the generated "
                "ground truth for swerves");
  }
  const Vec2 p0{config.approach_length, config.lateral_offset};
  const Vec2 v_rel{-(config.robot_speed + config.ped_speed), 0.0};
  return analytic_min_distance(p0, v_rel, config.effective_duration());
}

AnalyticPttc analytic_min_pttc(const ScenarioConfig& config) {
  config.validate();
  const Scene scene = build_scene(config);
  const GroundTruth truth = ground_truth(scene);
  return {truth.t_p, truth.d_tp, truth.never_approaching};
}

SweepSpec SweepSpec::from_json_file(const std::filesystem::path& path) {
  ordered_json j;
  try {
    j = ordered_json::parse(csv::read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::bad_format, "cannot parse " + path.string() + ": " + e.what());
  }
  SweepSpec spec;
  try {
    if (j.contains("base")) {
      const auto& b = j["base"];
      const auto get = [&](const char* key, double fallback) {
        return b.contains(key) ? b[key].get<double>() : fallback;
      };
      spec.base.hallway_width = get("hallway_width", spec.base.hallway_width);
      spec.base.robot_speed = get("robot_speed", spec.base.robot_speed);
      spec.base.ped_speed = get("ped_speed", spec.base.ped_speed);
      spec.base.approach_length = get("approach_length", spec.base.approach_length);
      spec.base.lateral_offset = get("lateral_offset", spec.base.lateral_offset);
      spec.base.avoidance_radius = get("avoidance_radius", spec.base.avoidance_radius);
      spec.base.swerve_angle = get("swerve_angle", spec.base.swerve_angle);
      spec.base.noise_sigma = get("noise_sigma", spec.base.noise_sigma);
      spec.base.dt = get("dt", spec.base.dt);
      spec.base.duration = get("duration", spec.base.duration);
      if (b.contains("emit_velocities")) {
        spec.base.emit_velocities = b["emit_velocities"].get<bool>();
      }
    }
    if (j.contains("speeds")) spec.speeds = j["speeds"].get<std::vector<double>>();
    if (j.contains("lateral_offsets")) {
      spec.lateral_offsets = j["lateral_offsets"].get<std::vector<double>>();
    }
    if (j.contains("avoidance_radii")) {
      spec.avoidance_radii = j["avoidance_radii"].get<std::vector<double>>();
    }
    if (j.contains("trials_per_participant")) {
      spec.trials_per_participant = j["trials_per_participant"].get<int>();
    }
    if (j.contains("label_noise")) spec.label_noise = j["label_noise"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::bad_format, "bad sweep spec " + path.string() + ": " + e.what());
  }
  if (spec.speeds.empty() || spec.lateral_offsets.empty() || spec.avoidance_radii.empty()) {
    throw Error(Errc::invalid_config, "sweep lists must not be empty");
  }
  if (spec.trials_per_participant < 1 || spec.trials_per_participant > 5) {
    throw Error(Errc::invalid_config, "trials per participant must lie in 1..5");
  }
  return spec;
}

std::string SweepSpec::to_json_string() const {
  ordered_json j;
  j["base"] = {{"hallway_width", base.hallway_width},
               {"robot_speed", base.robot_speed},
               {"ped_speed", base.ped_speed},
               {"approach_length", base.approach_length},
               {"lateral_offset", base.lateral_offset},
               {"avoidance_radius", base.avoidance_radius},
               {"swerve_angle", base.swerve_angle},
               {"noise_sigma", base.noise_sigma},
               {"dt", base.dt},
               {"duration", base.duration},
               {"emit_velocities", base.emit_velocities}};
  j["speeds"] = speeds;
  j["lateral_offsets"] = lateral_offsets;
  j["avoidance_radii"] = avoidance_radii;
  j["trials_per_participant"] = trials_per_participant;
  j["label_noise"] = label_noise;
  return j.dump(2) + "\n";
}

namespace {

// Documented synthetic labeling: a logistic squash of the composite score
// plus seeded Gaussian noise, rounded onto the 1..5 scale. Marked
// `synthetic-label` in provenance so it is never mistaken for human data.
int synthesize_label(const GroundTruth& truth, const PredictorConfig& config, double noise,
                     Rng& rng) {
  KinematicFeatures features;
  features.v = truth.v;
  features.d_min = truth.d_min;
  features.d_lat = truth.d_lat;
  features.rho = truth.rho;
  features.t_p = truth.t_p;
  features.d_tp = truth.d_tp;
  if (truth.never_approaching) features.flags.insert(FeatureFlag::never_approaching);
  const int e = composite_score(features, config.bins, config.weights).score;
  const double u = 1.0 / (1.0 + std::exp(-0.7 * (static_cast<double>(e) - 4.5)));
  const double s_cont = 1.0 + 4.0 * u + noise * rng.next_gaussian();
  return std::clamp(static_cast<int>(std::lround(s_cont)), 1, 5);
}

std::string zero_padded(int value, int width) {
  std::string digits = std::to_string(value);
  if (static_cast<int>(digits.size()) < width) {
    digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
  }
  return digits;
}

}  // namespace

EncounterDataset simulate_dataset(const SweepSpec& spec, int n_trials, std::uint64_t seed) {
  if (n_trials < 1) {
    throw Error(Errc::invalid_config, "n_trials must be positive");
  }
  const PredictorConfig predictor_config = PredictorConfig::defaults();
  EncounterDataset dataset;
  const int tpp = spec.trials_per_participant;
  for (int i = 0; i < n_trials; ++i) {
    const int participant = i / tpp;
    ScenarioConfig config = spec.base;
    config.robot_speed = spec.speeds[static_cast<std::size_t>(participant) % spec.speeds.size()];
    config.lateral_offset =
        spec.lateral_offsets[static_cast<std::size_t>(i) % spec.lateral_offsets.size()];
    config.avoidance_radius =
        spec.avoidance_radii[(static_cast<std::size_t>(i) / spec.lateral_offsets.size()) %
                             spec.avoidance_radii.size()];
    config.seed = mix_seed(seed, static_cast<std::uint64_t>(i));

    GeneratedTrial generated = generate_encounter(config);
    Rng label_rng(mix_seed(seed, 0x100000ULL + static_cast<std::uint64_t>(i)));
    generated.trial.reported_comfort =
        synthesize_label(generated.truth, predictor_config, spec.label_noise, label_rng);
    generated.trial.trial_id = "t" + zero_padded(i + 1, 4);
    generated.trial.participant_id = "p" + zero_padded(participant + 1, 3);
    generated.trial.trial_index = i % tpp + 1;
    dataset.trials.push_back(std::move(generated.trial));
  }
  dataset.provenance["generator"] = "pedcomfort.synthgen";
  dataset.provenance["label_source"] = "synthetic-label";
  dataset.provenance["seed"] = std::to_string(seed);
  dataset.provenance["n_trials"] = std::to_string(n_trials);
  return dataset;
}

}  // namespace pedcomfort
