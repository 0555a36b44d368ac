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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "pedcomfort/geometry.hpp"

namespace pedcomfort::testing {

// Independent distance-correlation oracle written straight from the
// definition: materialize both pairwise-distance matrices, double-center
// them element by element, then average the products. Kept deliberately
// separate from the library implementation.
inline double brute_force_dcor(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  std::vector<std::vector<double>> b(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = std::abs(x[i] - x[j]);
      b[i][j] = std::abs(y[i] - y[j]);
    }
  }
  const auto center = [n](std::vector<std::vector<double>>& m) {
    std::vector<double> row(n, 0.0), col(n, 0.0);
    double grand = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        row[i] += m[i][j];
        col[j] += m[i][j];
        grand += m[i][j];
      }
    }
    for (std::size_t i = 0; i < n; ++i) row[i] /= static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) col[j] /= static_cast<double>(n);
    grand /= static_cast<double>(n) * static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] = m[i][j] - row[i] - col[j] + grand;
      }
    }
  };
  center(a);
  center(b);
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cov += a[i][j] * b[i][j];
      var_a += a[i][j] * a[i][j];
      var_b += b[i][j] * b[i][j];
    }
  }
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  cov /= n2;
  var_a /= n2;
  var_b /= n2;
  if (var_a <= 0.0 || var_b <= 0.0) return 0.0;
  if (cov <= 0.0) return 0.0;
  return std::sqrt(cov / std::sqrt(var_a * var_b));
}

// Brute-force PTTC oracle: freeze the radial closing speed of the given
// state and step the separation down at dt until it would reach zero.
inline double brute_force_pttc(const Vec2& p_rel, const Vec2& v_rel, double dt = 1e-4) {
  double dist = p_rel.norm();
  const double closing = -p_rel.dot(v_rel) / dist;
  double t = 0.0;
  while (dist > 0.0) {
    dist -= closing * dt;
    t += dt;
  }
  return t;
}

// Two-sided Kolmogorov-Smirnov statistic against U(0,1).
inline double ks_uniform_statistic(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max({d, values[i] - lo, hi - values[i]});
  }
  return d;
}

// Asymptotic critical value at alpha = 0.01.
inline double ks_critical_1pct(std::size_t n) {
  return 1.62762 / std::sqrt(static_cast<double>(n));
}

}  // namespace pedcomfort::testing
