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

#include "pedcomfort/dataset_io.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "pedcomfort/errors.hpp"

namespace pedcomfort {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  const std::string text = csv::read_text_file(path);
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

void check_monotone(const Trajectory& traj, const std::string& context) {
  for (std::size_t i = 1; i < traj.size(); ++i) {
    if (!(traj.samples[i].t > traj.samples[i - 1].t)) {
      throw Error(Errc::non_monotone_time,
                  context + ": timestamps not strictly increasing at row " + std::to_string(i + 1));
    }
  }
}

// Robot pose (position + heading direction) linearly interpolated at time t,
// used to re-express robot-relative pedestrian measurements in world frame.
struct PoseAt {
  Vec2 position;
  double heading;
};

PoseAt robot_pose_at(const Trajectory& robot, double t, const std::string& context) {
  const auto& s = robot.samples;
  if (s.empty()) throw Error(Errc::too_few_samples, context + ": empty robot trajectory");
  std::size_t i = 0;
  while (i + 2 < s.size() && s[i + 1].t <= t) ++i;
  const auto& a = s[i];
  const auto& b = s[std::min(i + 1, s.size() - 1)];
  const double span = b.t - a.t;
  const double alpha = span > 0.0 ? std::clamp((t - a.t) / span, 0.0, 1.0) : 0.0;

  const auto heading_of = [&](const TrajectorySample& sample) -> double {
    if (sample.heading) return *sample.heading;
    if (sample.velocity && sample.velocity->norm() > 1e-9) {
      return std::atan2(sample.velocity->y, sample.velocity->x);
    }
    throw Error(Errc::heading_unavailable,
                context + ": robot heading needed for frame conversion is unavailable");
  };

  PoseAt pose;
  pose.position = a.position + (b.position - a.position) * alpha;
  const double ha = heading_of(a);
  pose.heading = ha + wrap_angle(heading_of(b) - ha) * alpha;
  return pose;
}

void convert_pedestrian_to_world(TrialRecord& trial) {
  const std::string context = "trial " + trial.trial_id;
  Trajectory world = trial.pedestrian;
  for (auto& sample : world.samples) {
    const PoseAt pose = robot_pose_at(trial.robot, sample.t, context);
    const RigidTransform tf{pose.heading, pose.position};
    sample.position = tf.apply_point(sample.position);
    if (sample.velocity) {
      // Relative velocity in the robot frame back to world: rotate, then
      // add the robot's own velocity when it is recorded.
      Vec2 v = tf.apply_vector(*sample.velocity);
      std::size_t i = 0;
      const auto& rs = trial.robot.samples;
      while (i + 2 < rs.size() && rs[i + 1].t <= sample.t) ++i;
      if (rs[i].velocity) v += *rs[i].velocity;
      sample.velocity = v;
    }
  }
  world.frame_id = "world";
  trial.pedestrian = world;
}

void reject_if_invalid(const TrialRecord& trial) {
  const auto violations = validate_trial(trial);
  if (violations.empty()) return;
  const auto& v = violations.front();
  Errc code = Errc::bad_format;
  switch (v.code) {
    case ViolationCode::too_few_samples: code = Errc::too_few_samples; break;
    case ViolationCode::non_monotone_time: code = Errc::non_monotone_time; break;
    case ViolationCode::nonfinite_sample: code = Errc::bad_field; break;
    case ViolationCode::missing_comfort:
    case ViolationCode::comfort_out_of_range: code = Errc::comfort_out_of_range; break;
    case ViolationCode::trial_index_out_of_range: code = Errc::trial_index_out_of_range; break;
  }
  throw Error(code, "trial " + trial.trial_id + ": " + v.message);
}

EncounterDataset load_trials_csv(const std::filesystem::path& path) {
  std::filesystem::path csv_file = path;
  if (std::filesystem::is_directory(path)) csv_file = path / "trials.csv";
  if (!std::filesystem::exists(csv_file)) {
    throw Error(Errc::io_failure, csv_file.string() + " does not exist");
  }
  const auto lines = read_lines(csv_file);
  if (lines.empty()) {
    throw Error(Errc::bad_format, csv_file.string() + " is empty");
  }
  const auto header = csv::parse_header(lines[0]);
  const std::string ctx = csv_file.string();
  const std::size_t c_id = header.require("trial_id", ctx);
  const std::size_t c_participant = header.require("participant_id", ctx);
  const std::size_t c_index = header.require("trial_index", ctx);
  const std::size_t c_group = header.require("speed_group", ctx);
  const std::size_t c_comfort = header.require("reported_comfort", ctx);
  const std::size_t c_lateral = header.require("lateral_valid", ctx);
  const std::size_t c_robot = header.require("robot_file", ctx);
  const std::size_t c_ped = header.require("pedestrian_file", ctx);

  const std::filesystem::path base = csv_file.parent_path();
  EncounterDataset dataset;
  std::set<std::string> seen;
  for (std::size_t row = 1; row < lines.size(); ++row) {
    const auto fields = csv::split_line(lines[row]);
    if (fields.size() != header.names.size()) {
      throw Error(Errc::bad_format, ctx + " row " + std::to_string(row + 1) + " has " +
                                        std::to_string(fields.size()) + " fields, header has " +
                                        std::to_string(header.names.size()));
    }
    TrialRecord trial;
    trial.trial_id = fields[c_id];
    trial.participant_id = fields[c_participant];
    const std::string row_ctx = ctx + " trial " + trial.trial_id;
    trial.trial_index = static_cast<int>(csv::parse_long(fields[c_index], row_ctx));
    trial.speed_group = parse_speed_group(fields[c_group]);
    if (!fields[c_comfort].empty()) {
      trial.reported_comfort = static_cast<int>(csv::parse_long(fields[c_comfort], row_ctx));
    }
    trial.lateral_valid = csv::parse_bool(fields[c_lateral], row_ctx);
    trial.robot = load_trajectory_csv(base / fields[c_robot]);
    trial.pedestrian = load_trajectory_csv(base / fields[c_ped]);
    check_monotone(trial.robot, row_ctx + " robot");
    check_monotone(trial.pedestrian, row_ctx + " pedestrian");

    if (!seen.insert(trial.trial_id).second) {
      throw Error(Errc::duplicate_trial_id, "trial id '" + trial.trial_id + "' appears twice");
    }
    reject_if_invalid(trial);
    dataset.trials.push_back(std::move(trial));
  }

  const auto provenance_file = base / "provenance.json";
  if (std::filesystem::exists(provenance_file)) {
    const auto j = ordered_json::parse(csv::read_text_file(provenance_file));
    for (const auto& [key, value] : j.items()) {
      dataset.provenance[key] = value.get<std::string>();
    }
  }
  return dataset;
}

EncounterDataset load_trials_dir(const std::filesystem::path& path) {
  if (!std::filesystem::is_directory(path)) {
    throw Error(Errc::io_failure, path.string() + " is not a directory");
  }
  std::vector<std::filesystem::path> trial_dirs;
  for (const auto& entry : std::filesystem::directory_iterator(path)) {
    if (entry.is_directory() && std::filesystem::exists(entry.path() / "meta.json")) {
      trial_dirs.push_back(entry.path());
    }
  }
  std::sort(trial_dirs.begin(), trial_dirs.end());
  if (trial_dirs.empty()) {
    throw Error(Errc::bad_format, path.string() + " holds no trial subdirectories");
  }

  EncounterDataset dataset;
  std::set<std::string> seen;
  for (const auto& dir : trial_dirs) {
    ordered_json meta;
    try {
      meta = ordered_json::parse(csv::read_text_file(dir / "meta.json"));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(Errc::bad_format, (dir / "meta.json").string() + ": " + e.what());
    }
    TrialRecord trial;
    try {
      trial.trial_id = meta.at("trial_id").get<std::string>();
      trial.participant_id = meta.at("participant_id").get<std::string>();
      trial.trial_index = meta.at("trial_index").get<int>();
      trial.speed_group = parse_speed_group(meta.at("speed_group").get<std::string>());
      if (meta.contains("reported_comfort") && !meta["reported_comfort"].is_null()) {
        trial.reported_comfort = meta["reported_comfort"].get<int>();
      }
      trial.lateral_valid = meta.at("lateral_valid").get<bool>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::missing_column, (dir / "meta.json").string() + ": " + e.what());
    }
    trial.robot = load_trajectory_csv(dir / "robot.csv");
    trial.pedestrian = load_trajectory_csv(dir / "pedestrian.csv");
    check_monotone(trial.robot, "trial " + trial.trial_id + " robot");
    check_monotone(trial.pedestrian, "trial " + trial.trial_id + " pedestrian");

    if (meta.contains("pedestrian_frame") && meta["pedestrian_frame"] == "robot") {
      convert_pedestrian_to_world(trial);
      dataset.provenance["frame_conversion." + trial.trial_id] = "robot-relative to world";
    }

    if (!seen.insert(trial.trial_id).second) {
      throw Error(Errc::duplicate_trial_id, "trial id '" + trial.trial_id + "' appears twice");
    }
    reject_if_invalid(trial);
    dataset.trials.push_back(std::move(trial));
  }

  const auto dataset_file = path / "dataset.json";
  if (std::filesystem::exists(dataset_file)) {
    const auto j = ordered_json::parse(csv::read_text_file(dataset_file));
    if (j.contains("provenance")) {
      for (const auto& [key, value] : j["provenance"].items()) {
        dataset.provenance[key] = value.get<std::string>();
      }
    }
  }
  return dataset;
}

std::string trajectory_to_csv(const Trajectory& traj) {
  std::string out = "t,x,y,vx,vy,heading\n";
  for (const auto& s : traj.samples) {
    out += csv::format_double(s.t);
    out += ',';
    out += csv::format_double(s.position.x);
    out += ',';
    out += csv::format_double(s.position.y);
    out += ',';
    if (s.velocity) out += csv::format_double(s.velocity->x);
    out += ',';
    if (s.velocity) out += csv::format_double(s.velocity->y);
    out += ',';
    if (s.heading) out += csv::format_double(*s.heading);
    out += '\n';
  }
  return out;
}

}  // namespace

DatasetFormat detect_format(const std::filesystem::path& path) {
  if (std::filesystem::is_regular_file(path)) return DatasetFormat::trials_csv;
  if (std::filesystem::is_directory(path) && std::filesystem::exists(path / "trials.csv")) {
    return DatasetFormat::trials_csv;
  }
  return DatasetFormat::trials_dir;
}

EncounterDataset load_dataset(const std::filesystem::path& path, DatasetFormat format) {
  if (!std::filesystem::exists(path)) {
    throw Error(Errc::io_failure, path.string() + " does not exist");
  }
  return format == DatasetFormat::trials_csv ? load_trials_csv(path) : load_trials_dir(path);
}

EncounterDataset load_dataset(const std::filesystem::path& path) {
  return load_dataset(path, detect_format(path));
}

Trajectory load_trajectory_csv(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw Error(Errc::io_failure, path.string() + " does not exist");
  }
  const auto lines = read_lines(path);
  if (lines.empty()) {
    throw Error(Errc::bad_format, path.string() + " is empty");
  }
  const auto header = csv::parse_header(lines[0]);
  const std::string ctx = path.string();
  const std::size_t c_t = header.require("t", ctx);
  const std::size_t c_x = header.require("x", ctx);
  const std::size_t c_y = header.require("y", ctx);
  const std::size_t c_vx = header.require("vx", ctx);
  const std::size_t c_vy = header.require("vy", ctx);
  const std::size_t c_heading = header.require("heading", ctx);

  Trajectory traj;
  traj.samples.reserve(lines.size() - 1);
  for (std::size_t row = 1; row < lines.size(); ++row) {
    const auto fields = csv::split_line(lines[row]);
    if (fields.size() != header.names.size()) {
      throw Error(Errc::bad_format, ctx + " row " + std::to_string(row + 1) + " has " +
                                        std::to_string(fields.size()) + " fields");
    }
    const std::string row_ctx = ctx + " row " + std::to_string(row + 1);
    TrajectorySample sample;
    sample.t = csv::parse_double(fields[c_t], row_ctx);
    sample.position.x = csv::parse_double(fields[c_x], row_ctx);
    sample.position.y = csv::parse_double(fields[c_y], row_ctx);
    const auto vx = csv::parse_optional_double(fields[c_vx], row_ctx);
    const auto vy = csv::parse_optional_double(fields[c_vy], row_ctx);
    if (vx.has_value() != vy.has_value()) {
      throw Error(Errc::bad_field, row_ctx + ": vx and vy must both be present or both empty");
    }
    if (vx) sample.velocity = Vec2{*vx, *vy};
    const auto heading = csv::parse_optional_double(fields[c_heading], row_ctx);
    if (heading) sample.heading = *heading;
    traj.samples.push_back(sample);
  }
  return traj;
}

void save_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path) {
  csv::write_text_file(path, trajectory_to_csv(traj));
}

void save_dataset(const EncounterDataset& dataset, const std::filesystem::path& directory,
                  DatasetFormat format) {
  std::filesystem::create_directories(directory);
  if (format == DatasetFormat::trials_csv) {
    std::string index =
        "trial_id,participant_id,trial_index,speed_group,reported_comfort,lateral_valid,"
        "robot_file,pedestrian_file\n";
    for (const auto& trial : dataset.trials) {
      const std::string robot_file = trial.trial_id + "_robot.csv";
      const std::string ped_file = trial.trial_id + "_pedestrian.csv";
      save_trajectory_csv(trial.robot, directory / robot_file);
      save_trajectory_csv(trial.pedestrian, directory / ped_file);
      index += trial.trial_id + ',' + trial.participant_id + ',' +
               std::to_string(trial.trial_index) + ',' + to_string(trial.speed_group) + ',';
      if (trial.reported_comfort) index += std::to_string(*trial.reported_comfort);
      index += ',';
      index += trial.lateral_valid ? "true" : "false";
      index += ',' + robot_file + ',' + ped_file + '\n';
    }
    csv::write_text_file(directory / "trials.csv", index);
    if (!dataset.provenance.empty()) {
      ordered_json j(dataset.provenance);
      csv::write_text_file(directory / "provenance.json", j.dump(2) + "\n");
    }
  } else {
    for (const auto& trial : dataset.trials) {
      const auto dir = directory / trial.trial_id;
      std::filesystem::create_directories(dir);
      ordered_json meta;
      meta["trial_id"] = trial.trial_id;
      meta["participant_id"] = trial.participant_id;
      meta["trial_index"] = trial.trial_index;
      meta["speed_group"] = to_string(trial.speed_group);
      if (trial.reported_comfort) {
        meta["reported_comfort"] = *trial.reported_comfort;
      } else {
        meta["reported_comfort"] = nullptr;
      }
      meta["lateral_valid"] = trial.lateral_valid;
      csv::write_text_file(dir / "meta.json", meta.dump(2) + "\n");
      save_trajectory_csv(trial.robot, dir / "robot.csv");
      save_trajectory_csv(trial.pedestrian, dir / "pedestrian.csv");
    }
    if (!dataset.provenance.empty()) {
      ordered_json j;
      j["provenance"] = dataset.provenance;
      csv::write_text_file(directory / "dataset.json", j.dump(2) + "\n");
    }
  }
}

}  // namespace pedcomfort
