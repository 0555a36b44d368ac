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

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "pedcomfort/trial.hpp"

namespace pedcomfort::testing {

// Straight constant-velocity trajectory from `start` with velocity `vel`.
inline Trajectory line_trajectory(const Vec2& start, const Vec2& vel, double duration, double dt,
                                  bool with_velocity = true, bool with_heading = false) {
  Trajectory traj;
  const std::size_t count = static_cast<std::size_t>(std::floor(duration / dt)) + 1;
  for (std::size_t k = 0; k < count; ++k) {
    TrajectorySample s;
    s.t = static_cast<double>(k) * dt;
    s.position = start + vel * s.t;
    if (with_velocity) s.velocity = vel;
    if (with_heading) s.heading = std::atan2(vel.y, vel.x);
    traj.samples.push_back(s);
  }
  return traj;
}

// Circle of radius r traversed at constant speed, starting at angle 0.
inline Trajectory circle_trajectory(double radius, double speed, double duration, double dt,
                                    bool with_velocity = false) {
  Trajectory traj;
  const double omega = speed / radius;
  const std::size_t count = static_cast<std::size_t>(std::floor(duration / dt)) + 1;
  for (std::size_t k = 0; k < count; ++k) {
    TrajectorySample s;
    s.t = static_cast<double>(k) * dt;
    const double a = omega * s.t;
    s.position = {radius * std::cos(a), radius * std::sin(a)};
    if (with_velocity) s.velocity = Vec2{-speed * std::sin(a), speed * std::cos(a)};
    traj.samples.push_back(s);
  }
  return traj;
}

inline TrialRecord basic_trial(std::string id, Trajectory robot, Trajectory pedestrian,
                               int comfort = 4) {
  TrialRecord trial;
  trial.trial_id = std::move(id);
  trial.participant_id = "p001";
  trial.trial_index = 1;
  trial.speed_group = SpeedGroup::R14;
  trial.robot = std::move(robot);
  trial.pedestrian = std::move(pedestrian);
  trial.reported_comfort = comfort;
  trial.lateral_valid = true;
  return trial;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Unique scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("pedcomfort_test_" + tag + "_" + std::to_string(++counter) + "_" +
             std::to_string(static_cast<long long>(::getpid())));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace pedcomfort::testing
