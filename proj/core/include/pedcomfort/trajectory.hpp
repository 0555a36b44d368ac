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
#include <string>
#include <vector>

#include "pedcomfort/geometry.hpp"

namespace pedcomfort {

// One timestamped planar state. Velocity and heading are optional on
// ingest; downstream processing derives velocity by finite differences
// when it is absent.
struct TrajectorySample {
  double t = 0.0;  // seconds
  Vec2 position;   // meters, world frame
  std::optional<Vec2> velocity;    // m/s
  std::optional<double> heading;   // radians (recorded for the robot)
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  std::string frame_id = "world";

  bool empty() const { return samples.empty(); }
  std::size_t size() const { return samples.size(); }

  double start_time() const { return samples.front().t; }
  double end_time() const { return samples.back().t; }
  double duration() const { return end_time() - start_time(); }

  bool has_velocities() const {
    for (const auto& s : samples) {
      if (!s.velocity) return false;
    }
    return !samples.empty();
  }
  bool has_headings() const {
    for (const auto& s : samples) {
      if (!s.heading) return false;
    }
    return !samples.empty();
  }
};

}  // namespace pedcomfort
