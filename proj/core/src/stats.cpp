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

#include "pedcomfort/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "pedcomfort/errors.hpp"
#include "rng.hpp"

namespace pedcomfort::stats {

ContingencyTable2x2 contingency(std::span<const int> preds, std::span<const int> truths) {
  if (preds.size() != truths.size()) {
    throw Error(Errc::length_mismatch, "preds has " + std::to_string(preds.size()) +
                                           " entries, truths has " + std::to_string(truths.size()));
  }
  if (preds.empty()) {
    throw Error(Errc::empty_series, "cannot build a contingency table from no pairs");
  }
  ContingencyTable2x2 table;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const int p = preds[i], t = truths[i];
    if ((p != 0 && p != 1) || (t != 0 && t != 1)) {
      throw Error(Errc::out_of_range, "contingency inputs must be binary, got pred=" +
                                          std::to_string(p) + " truth=" + std::to_string(t));
    }
    ++table.n[p][t];
  }
  return table;
}

double chi_square_sf_df1(double statistic) {
  return std::erfc(std::sqrt(statistic / 2.0));
}

ChiSquareResult chi_square(const ContingencyTable2x2& table, bool yates) {
  const double total = static_cast<double>(table.total());
  for (int r : {0, 1}) {
    if (table.row_sum(r) == 0) {
      throw Error(Errc::zero_marginal, "row " + std::to_string(r) + " sums to zero");
    }
  }
  for (int c : {0, 1}) {
    if (table.col_sum(c) == 0) {
      throw Error(Errc::zero_marginal, "column " + std::to_string(c) + " sums to zero");
    }
  }
  double statistic = 0.0;
  for (int r : {0, 1}) {
    for (int c : {0, 1}) {
      const double expected =
          static_cast<double>(table.row_sum(r)) * static_cast<double>(table.col_sum(c)) / total;
      double dev = std::abs(static_cast<double>(table.n[r][c]) - expected);
      if (yates) dev = std::max(dev - 0.5, 0.0);
      statistic += dev * dev / expected;
    }
  }
  return {statistic, chi_square_sf_df1(statistic), yates};
}

OddsRatioResult odds_ratio(const ContingencyTable2x2& table) {
  const bool zero_cell =
      table.n[0][0] == 0 || table.n[0][1] == 0 || table.n[1][0] == 0 || table.n[1][1] == 0;
  const double shift = zero_cell ? 0.5 : 0.0;
  const double n00 = static_cast<double>(table.n[0][0]) + shift;
  const double n01 = static_cast<double>(table.n[0][1]) + shift;
  const double n10 = static_cast<double>(table.n[1][0]) + shift;
  const double n11 = static_cast<double>(table.n[1][1]) + shift;
  return {(n11 / n10) / (n01 / n00), zero_cell};
}

ClassificationMetrics classification_metrics(const ContingencyTable2x2& table,
                                             MetricOrientation orientation) {
  ClassificationMetrics m;
  m.orientation = orientation;
  m.tp = table.n[1][1];
  m.tn = table.n[0][0];
  if (orientation == MetricOrientation::standard) {
    m.fp = table.n[1][0];
    m.fn = table.n[0][1];
  } else {
    m.fp = table.n[0][1];
    m.fn = table.n[1][0];
  }
  const auto ratio = [](long long num, long long den) -> std::optional<double> {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
  };
  m.accuracy = ratio(m.tp + m.tn, m.tp + m.tn + m.fp + m.fn);
  m.precision = ratio(m.tp, m.tp + m.fp);
  m.recall = ratio(m.tp, m.tp + m.fn);
  m.specificity = ratio(m.tn, m.tn + m.fp);
  if (m.precision && m.recall && (*m.precision + *m.recall) > 0.0) {
    m.f1 = 2.0 * *m.precision * *m.recall / (*m.precision + *m.recall);
  }
  return m;
}

namespace {

// Pairwise |v_i - v_j| with row means and grand mean.
struct DistanceMatrix {
  std::vector<double> d;  // n*n, row-major
  std::vector<double> row_mean;
  double grand_mean = 0.0;
  std::size_t n = 0;

  explicit DistanceMatrix(std::span<const double> v) : d(v.size() * v.size()), row_mean(v.size()), n(v.size()) {
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double dij = std::abs(v[i] - v[j]);
        d[i * n + j] = dij;
        sum += dij;
      }
      row_mean[i] = sum / static_cast<double>(n);
    }
    double total = 0.0;
    for (double r : row_mean) total += r;
    grand_mean = total / static_cast<double>(n);
  }

  double centered(std::size_t i, std::size_t j) const {
    return d[i * n + j] - row_mean[i] - row_mean[j] + grand_mean;
  }

  // Mean of the squared centered entries (distance variance).
  double variance() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double c = centered(i, j);
        acc += c * c;
      }
    }
    return acc / (static_cast<double>(n) * static_cast<double>(n));
  }
};

}  // namespace

DcorValue distance_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(Errc::length_mismatch, "x has " + std::to_string(x.size()) + " entries, y has " +
                                           std::to_string(y.size()));
  }
  if (x.size() < 2) {
    throw Error(Errc::too_few_samples, "distance correlation needs at least 2 samples");
  }
  const DistanceMatrix ax(x), by(y);
  const double var_x = ax.variance();
  const double var_y = by.variance();
  if (var_x <= 0.0 || var_y <= 0.0) {
    return {0.0, true};
  }
  const std::size_t n = x.size();
  double cov = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cov += ax.centered(i, j) * by.centered(i, j);
    }
  }
  cov /= static_cast<double>(n) * static_cast<double>(n);
  if (cov <= 0.0) return {0.0, false};
  return {std::min(1.0, std::sqrt(cov / std::sqrt(var_x * var_y))), false};
}

DcorResult permutation_pvalue(std::span<const double> x, std::span<const double> y, int n_iter,
                              std::uint64_t seed) {
  if (n_iter < 0) {
    throw Error(Errc::invalid_config, "n_iter must be non-negative");
  }
  const DcorValue observed = distance_correlation(x, y);
  DcorResult result;
  result.dcor = observed.value;
  result.n_permutations = n_iter;
  result.seed = seed;
  result.constant_input = observed.constant_input;

  const std::size_t n = x.size();
  const DistanceMatrix ax(x), by(y);
  const double var_x = ax.variance();
  const double var_y = by.variance();

  // Permuting y permutes rows and columns of its centered matrix, so the
  // matrices are centered once and each iteration is a single product pass.
  std::vector<double> a(n * n), b(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[i * n + j] = ax.centered(i, j);
      b[i * n + j] = by.centered(i, j);
    }
  }

  int count_ge = 0;
  for (int k = 0; k < n_iter; ++k) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(k)));
    const auto perm = random_permutation(n, rng);
    double perm_dcor = 0.0;
    if (var_x > 0.0 && var_y > 0.0) {
      double cov = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double* arow = a.data() + i * n;
        const double* brow = b.data() + perm[i] * n;
        for (std::size_t j = 0; j < n; ++j) {
          cov += arow[j] * brow[perm[j]];
        }
      }
      cov /= static_cast<double>(n) * static_cast<double>(n);
      perm_dcor = cov <= 0.0 ? 0.0 : std::min(1.0, std::sqrt(cov / std::sqrt(var_x * var_y)));
    }
    if (perm_dcor >= result.dcor) ++count_ge;
  }
  result.p_value = (1.0 + static_cast<double>(count_ge)) / (1.0 + static_cast<double>(n_iter));
  return result;
}

TrendResult linear_trend(std::span<const std::pair<double, double>> points) {
  const std::size_t n = points.size();
  if (n < 2) {
    throw Error(Errc::too_few_samples, "linear trend needs at least 2 points");
  }
  double mean_x = 0.0, mean_y = 0.0;
  for (const auto& [xi, yi] : points) {
    mean_x += xi;
    mean_y += yi;
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [xi, yi] : points) {
    sxx += (xi - mean_x) * (xi - mean_x);
    sxy += (xi - mean_x) * (yi - mean_y);
  }
  if (sxx <= 0.0) {
    throw Error(Errc::invalid_config, "linear trend needs at least two distinct indices");
  }
  TrendResult result;
  result.slope = sxy / sxx;
  result.intercept = mean_y - result.slope * mean_x;

  if (n >= 3) {
    double ssr = 0.0;
    for (const auto& [xi, yi] : points) {
      const double r = yi - (result.intercept + result.slope * xi);
      ssr += r * r;
    }
    const double df = static_cast<double>(n - 2);
    const double se = std::sqrt(ssr / df / sxx);
    if (se == 0.0) {
      result.p_value = result.slope == 0.0 ? 1.0 : 0.0;
    } else {
      const boost::math::students_t dist(df);
      const double t = std::abs(result.slope / se);
      result.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, t));
    }
  }
  return result;
}

}  // namespace pedcomfort::stats
