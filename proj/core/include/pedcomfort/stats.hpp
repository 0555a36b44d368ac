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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>

namespace pedcomfort::stats {

// 2x2 counts indexed as n[prediction][truth].
struct ContingencyTable2x2 {
  std::array<std::array<long long, 2>, 2> n{{{0, 0}, {0, 0}}};

  long long total() const { return n[0][0] + n[0][1] + n[1][0] + n[1][1]; }
  long long row_sum(int r) const { return n[r][0] + n[r][1]; }
  long long col_sum(int c) const { return n[0][c] + n[1][c]; }

  ContingencyTable2x2 transposed() const {
    ContingencyTable2x2 t;
    t.n = {{{n[0][0], n[1][0]}, {n[0][1], n[1][1]}}};
    return t;
  }
};

ContingencyTable2x2 contingency(std::span<const int> preds, std::span<const int> truths);

struct ChiSquareResult {
  double statistic = 0.0;
  double p_value = 1.0;
  bool yates = false;
};

// Pearson chi-square on a 2x2 table, df = 1. With `yates` the continuity
// correction subtracts 0.5 from |observed - expected| (floored at 0).
ChiSquareResult chi_square(const ContingencyTable2x2& table, bool yates);

// Survival function of the chi-square distribution with one degree of
// freedom, via the erfc identity.
double chi_square_sf_df1(double statistic);

struct OddsRatioResult {
  double value = 0.0;
  // Haldane-Anscombe +0.5 applied because a cell was zero.
  bool haldane_corrected = false;
};

// (n11/n10) / (n01/n00): odds of truth=1 under prediction=1 relative to
// prediction=0. Transpose-invariant.
OddsRatioResult odds_ratio(const ContingencyTable2x2& table);

// `standard` reads rows as predictions: TP=n[1][1], FP=n[1][0], FN=n[0][1].
// `transposed` computes the same metrics on the transposed table, i.e. with
// FP and FN exchanged.
enum class MetricOrientation { standard, transposed };

struct ClassificationMetrics {
  long long tp = 0, fp = 0, fn = 0, tn = 0;
  MetricOrientation orientation = MetricOrientation::standard;
  // nullopt when the denominator is zero, never reported as 0.
  std::optional<double> accuracy, precision, recall, specificity, f1;
};

ClassificationMetrics classification_metrics(const ContingencyTable2x2& table,
                                             MetricOrientation orientation);

struct DcorValue {
  double value = 0.0;
  bool constant_input = false;  // a distance variance was zero; value defined as 0
};

// Sample distance correlation: double-centered pairwise-distance covariance
// normalized by the geometric mean of the distance variances. O(n^2), in [0, 1].
DcorValue distance_correlation(std::span<const double> x, std::span<const double> y);

struct DcorResult {
  double dcor = 0.0;
  double p_value = 1.0;
  int n_permutations = 0;
  std::uint64_t seed = 0;
  bool constant_input = false;
};

// Permutation test of independence: p = (1 + #{dcor_perm >= dcor_obs}) / (1 + n_iter).
// Each permutation is derived from its own substream of `seed`, so results do
// not depend on evaluation order and are reproducible for a fixed seed.
DcorResult permutation_pvalue(std::span<const double> x, std::span<const double> y, int n_iter,
                              std::uint64_t seed);

struct TrendResult {
  double slope = 0.0;
  double intercept = 0.0;
  // two-sided t-test on the slope; nullopt when fewer than 3 points
  std::optional<double> p_value;
};

// Ordinary least squares of value on index over (index, value) points.
TrendResult linear_trend(std::span<const std::pair<double, double>> points);

}  // namespace pedcomfort::stats
