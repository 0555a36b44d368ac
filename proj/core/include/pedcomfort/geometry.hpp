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

#include <cmath>

namespace pedcomfort {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }

  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  // z-component of the 2-D cross product
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double squared_norm() const { return x * x + y * y; }
  double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

// Planar rigid transform: rotate by angle, then translate.
struct RigidTransform {
  double angle = 0.0;
  Vec2 translation;

  Vec2 apply_point(const Vec2& p) const {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * p.x - s * p.y + translation.x, s * p.x + c * p.y + translation.y};
  }
  Vec2 apply_vector(const Vec2& v) const {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
  }
};

inline double wrap_angle(double a) {
  a = std::fmod(a + M_PI, 2.0 * M_PI);
  if (a < 0.0) a += 2.0 * M_PI;
  return a - M_PI;
}

}  // namespace pedcomfort
