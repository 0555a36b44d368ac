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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "pedcomfort/errors.hpp"
#include "pedcomfort/stats.hpp"
#include "support/oracles.hpp"

using namespace pedcomfort;
using namespace pedcomfort::stats;

namespace {

ContingencyTable2x2 table_from(long long n00, long long n01, long long n10, long long n11) {
  ContingencyTable2x2 t;
  t.n = {{{n00, n01}, {n10, n11}}};
  return t;
}

// Published contingency tables for the three predictors (rows are
// predictions 0/1, columns are binary comfort 0/1).
const ContingencyTable2x2 kMinDistanceTable = table_from(35, 48, 15, 47);
const ContingencyTable2x2 kMinPttcTable = table_from(40, 63, 10, 32);
const ContingencyTable2x2 kCompositeTable = table_from(32, 31, 18, 64);

std::vector<double> seeded_uniform(std::size_t n, std::uint64_t seed) {
  // xorshift-style mix; only used to build deterministic test vectors.
  std::vector<double> values(n);
  std::uint64_t state = seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL;
  for (auto& v : values) {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    v = static_cast<double>(state >> 11) * 0x1.0p-53;
  }
  return values;
}

}  // namespace

TEST_CASE("contingency counts pairs by (pred, truth)") {
  const std::vector<int> preds{1, 1, 0};
  const std::vector<int> truths{1, 0, 0};
  const auto table = contingency(preds, truths);
  CHECK(table.n[1][1] == 1);
  CHECK(table.n[1][0] == 1);
  CHECK(table.n[0][0] == 1);
  CHECK(table.n[0][1] == 0);

  const std::vector<int> zeros{0, 0, 0, 0};
  const auto all_zero = contingency(zeros, zeros);
  CHECK(all_zero.n[0][0] == 4);
  CHECK(all_zero.total() == 4);

  CHECK_THROWS_AS(contingency(std::vector<int>{1}, std::vector<int>{1, 0}), Error);
  CHECK_THROWS_AS(contingency(std::vector<int>{}, std::vector<int>{}), Error);
}

TEST_CASE("contingency reproduces the published min-distance table") {
  std::vector<int> preds, truths;
  const auto push = [&](int p, int t, int count) {
    for (int i = 0; i < count; ++i) {
      preds.push_back(p);
      truths.push_back(t);
    }
  };
  push(0, 0, 35);
  push(0, 1, 48);
  push(1, 0, 15);
  push(1, 1, 47);
  const auto table = contingency(preds, truths);
  CHECK(table.n == kMinDistanceTable.n);
}

TEST_CASE("chi-square with Yates correction on the composite table") {
  const auto result = chi_square(kCompositeTable, true);
  CHECK(result.statistic == doctest::Approx(11.873155).epsilon(1e-5));
  CHECK(result.p_value == doctest::Approx(0.00056949).epsilon(1e-4));
}

TEST_CASE("chi-square values computed under both conventions") {
  // Frozen from independent evaluation of the Pearson formula (scipy
  // cross-checked); the two conventions bracket published figures.
  const auto d_plain = chi_square(kMinDistanceTable, false);
  CHECK(d_plain.statistic == doctest::Approx(5.075608).epsilon(1e-5));
  CHECK(d_plain.p_value == doctest::Approx(0.02426476).epsilon(1e-5));
  const auto d_yates = chi_square(kMinDistanceTable, true);
  CHECK(d_yates.statistic == doctest::Approx(4.311153).epsilon(1e-5));

  const auto t_plain = chi_square(kMinPttcTable, false);
  CHECK(t_plain.statistic == doctest::Approx(2.981361).epsilon(1e-5));
  const auto t_yates = chi_square(kMinPttcTable, true);
  CHECK(t_yates.statistic == doctest::Approx(2.353379).epsilon(1e-5));

  const auto c_plain = chi_square(kCompositeTable, false);
  CHECK(c_plain.statistic == doctest::Approx(13.118752).epsilon(1e-5));
}

TEST_CASE("chi-square degenerate cases") {
  const auto balanced = chi_square(table_from(10, 10, 10, 10), false);
  CHECK(balanced.statistic == doctest::Approx(0.0));
  CHECK(balanced.p_value == doctest::Approx(1.0));

  CHECK_THROWS_AS(chi_square(table_from(0, 0, 5, 5), false), Error);
  CHECK_THROWS_AS(chi_square(table_from(5, 0, 5, 0), true), Error);
}

TEST_CASE("chi-square statistic dominates its Yates-corrected value") {
  const std::vector<ContingencyTable2x2> tables = {
      kMinDistanceTable, kMinPttcTable, kCompositeTable, table_from(3, 9, 11, 2),
      table_from(1, 1, 1, 30)};
  for (const auto& table : tables) {
    const auto plain = chi_square(table, false);
    const auto yates = chi_square(table, true);
    CHECK(plain.statistic >= 0.0);
    CHECK(yates.statistic >= 0.0);
    CHECK(plain.statistic >= yates.statistic);
  }
}

TEST_CASE("odds ratios match the published values") {
  CHECK(odds_ratio(kMinDistanceTable).value == doctest::Approx(2.28).epsilon(0.005));
  CHECK(odds_ratio(kMinPttcTable).value == doctest::Approx(2.03).epsilon(0.005));
  CHECK(odds_ratio(kCompositeTable).value == doctest::Approx(3.67).epsilon(0.005));
  CHECK_FALSE(odds_ratio(kCompositeTable).haldane_corrected);
}

TEST_CASE("odds ratio is transpose-invariant and applies Haldane on zero cells") {
  for (const auto& table : {kMinDistanceTable, kMinPttcTable, kCompositeTable}) {
    CHECK(odds_ratio(table).value ==
          doctest::Approx(odds_ratio(table.transposed()).value).epsilon(1e-12));
  }
  const auto corrected = odds_ratio(table_from(10, 0, 5, 5));
  CHECK(corrected.haldane_corrected);
  CHECK(corrected.value > 0.0);
  CHECK(std::isfinite(corrected.value));
}

TEST_CASE("classification metrics, transposed orientation, reproduce the published summary") {
  const auto check_row = [](const ContingencyTable2x2& table, double acc, double prec, double rec,
                            double spec, double f1) {
    const auto m = classification_metrics(table, MetricOrientation::transposed);
    CHECK(*m.accuracy == doctest::Approx(acc).epsilon(0.004));
    CHECK(*m.precision == doctest::Approx(prec).epsilon(0.004));
    CHECK(*m.recall == doctest::Approx(rec).epsilon(0.004));
    CHECK(*m.specificity == doctest::Approx(spec).epsilon(0.004));
    CHECK(*m.f1 == doctest::Approx(f1).epsilon(0.004));
  };
  check_row(kCompositeTable, 0.662, 0.674, 0.781, 0.508, 0.723);
  check_row(kMinDistanceTable, 0.566, 0.495, 0.758, 0.422, 0.599);
  check_row(kMinPttcTable, 0.497, 0.337, 0.762, 0.388, 0.467);
}

TEST_CASE("classification metrics, standard orientation") {
  const auto m = classification_metrics(kCompositeTable, MetricOrientation::standard);
  CHECK(*m.precision == doctest::Approx(64.0 / 82.0).epsilon(1e-12));
  CHECK(*m.recall == doctest::Approx(64.0 / 95.0).epsilon(1e-12));

  // accuracy does not depend on orientation; F1 equals the harmonic mean of
  // the returned precision and recall
  for (const auto& table : {kMinDistanceTable, kMinPttcTable, kCompositeTable}) {
    const auto std_m = classification_metrics(table, MetricOrientation::standard);
    const auto swp_m = classification_metrics(table, MetricOrientation::transposed);
    CHECK(*std_m.accuracy == doctest::Approx(*swp_m.accuracy).epsilon(1e-15));
    for (const auto& m2 : {std_m, swp_m}) {
      const double harmonic = 2.0 * *m2.precision * *m2.recall / (*m2.precision + *m2.recall);
      CHECK(*m2.f1 == doctest::Approx(harmonic).epsilon(1e-12));
    }
  }
}

TEST_CASE("classification metrics report undefined ratios as missing") {
  const auto m = classification_metrics(table_from(5, 7, 0, 0), MetricOrientation::standard);
  CHECK_FALSE(m.precision.has_value());  // no positive predictions
  CHECK(m.accuracy.has_value());
}

TEST_CASE("distance correlation of an affine relationship is 1") {
  std::vector<double> x, y;
  for (int i = 1; i <= 20; ++i) {
    x.push_back(i);
    y.push_back(2.0 * i + 1.0);
  }
  CHECK(distance_correlation(x, y).value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("distance correlation flags constant input") {
  const std::vector<double> x(10, 3.0);
  const auto y = seeded_uniform(10, 7);
  const auto r = distance_correlation(x, y);
  CHECK(r.value == 0.0);
  CHECK(r.constant_input);
}

TEST_CASE("distance correlation equals the frozen reference on a small case") {
  const std::vector<double> x{1, 2, 3, 4};
  const std::vector<double> y{1, 3, 2, 4};
  // Value computed independently from the double-centering definition.
  CHECK(distance_correlation(x, y).value ==
        doctest::Approx(0.8320502943378437).epsilon(1e-12));
}

TEST_CASE("distance correlation matches the brute-force oracle on seeded instances") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 2 + static_cast<std::size_t>(seed % 63);
    const auto x = seeded_uniform(n, seed * 2 + 1);
    auto y = seeded_uniform(n, seed * 2 + 2);
    if (seed % 3 == 0) {
      for (std::size_t i = 0; i < n; ++i) y[i] = std::sin(x[i] * 6.0) + 0.25 * y[i];
    }
    const double ours = distance_correlation(x, y).value;
    const double oracle = testing::brute_force_dcor(x, y);
    CHECK(ours == doctest::Approx(oracle).epsilon(1e-12));
  }
}

TEST_CASE("distance correlation properties: symmetry, range, invariance") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 8 + static_cast<std::size_t>(seed % 40);
    const auto x = seeded_uniform(n, seed + 100);
    const auto y = seeded_uniform(n, seed + 200);
    const double xy = distance_correlation(x, y).value;
    const double yx = distance_correlation(y, x).value;
    CHECK(xy == yx);
    CHECK(xy >= 0.0);
    CHECK(xy <= 1.0);

    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = 2.5 * x[i] + 7.0;
      ys[i] = 0.3 * y[i] - 4.0;
    }
    CHECK(distance_correlation(xs, ys).value == doctest::Approx(xy).epsilon(1e-9));
  }
}

TEST_CASE("permutation p-value is small for a perfect relationship") {
  std::vector<double> x, y;
  for (int i = 0; i < 50; ++i) {
    x.push_back(i);
    y.push_back(3.0 * i - 2.0);
  }
  const auto result = permutation_pvalue(x, y, 1000, 123);
  CHECK(result.dcor == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(result.p_value <= 0.001);
}

TEST_CASE("permutation p-value degenerate and deterministic cases") {
  const auto x = seeded_uniform(30, 5);
  const auto y = seeded_uniform(30, 6);
  const auto none = permutation_pvalue(x, y, 0, 9);
  CHECK(none.p_value == doctest::Approx(1.0));

  const auto a = permutation_pvalue(x, y, 250, 42);
  const auto b = permutation_pvalue(x, y, 250, 42);
  CHECK(a.p_value == b.p_value);
  CHECK(a.dcor == b.dcor);
}

TEST_CASE("linear trend reproduces the published per-trial slopes") {
  using Points = std::vector<std::pair<double, double>>;
  const Points r14{{1, 4.25}, {2, 4.12}, {3, 4.06}, {4, 4.00}, {5, 3.81}};
  const Points r28{{1, 3.44}, {2, 3.38}, {3, 3.44}, {4, 3.62}, {5, 3.81}};
  const Points total{{1, 3.84}, {2, 3.75}, {3, 3.75}, {4, 3.81}, {5, 3.81}};

  const auto t14 = linear_trend(r14);
  CHECK(t14.slope == doctest::Approx(-0.10).epsilon(0.05));
  CHECK(t14.intercept == doctest::Approx(4.348).epsilon(1e-6));

  const auto t28 = linear_trend(r28);
  CHECK(t28.slope == doctest::Approx(0.10).epsilon(0.05));

  const auto ttotal = linear_trend(total);
  CHECK(std::abs(ttotal.slope) <= 0.01);
  CHECK(*ttotal.p_value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("linear trend p-values from the slope t-test") {
  using Points = std::vector<std::pair<double, double>>;
  // Frozen from an independent OLS implementation. These come from the
  // five printed means, not from raw per-trial ratings.
  const Points r14{{1, 4.25}, {2, 4.12}, {3, 4.06}, {4, 4.00}, {5, 3.81}};
  CHECK(*linear_trend(r14).p_value == doctest::Approx(0.00457851).epsilon(1e-4));
  const Points r28{{1, 3.44}, {2, 3.38}, {3, 3.44}, {4, 3.62}, {5, 3.81}};
  CHECK(*linear_trend(r28).p_value == doctest::Approx(0.05084202).epsilon(1e-4));

  const Points two{{1, 1.0}, {2, 2.0}};
  const auto t2 = linear_trend(two);
  CHECK(t2.slope == doctest::Approx(1.0));
  CHECK_FALSE(t2.p_value.has_value());

  CHECK_THROWS_AS(linear_trend(Points{{1, 1.0}}), Error);
}
