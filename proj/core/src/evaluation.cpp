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

#include "pedcomfort/evaluation.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "pedcomfort/errors.hpp"
#include "pedcomfort/version.hpp"
#include "rng.hpp"

namespace pedcomfort {

namespace {

using ordered_json = nlohmann::ordered_json;

std::optional<double> variable_value(const KinematicFeatures& f, Variable variable) {
  switch (variable) {
    case Variable::speed: return f.v;
    case Variable::min_distance: return f.d_min;
    case Variable::lateral_distance: return f.d_lat;
    case Variable::max_curvature: return f.rho;
    case Variable::min_pttc: return f.t_p;
    case Variable::distance_at_min_pttc: return f.d_tp;
  }
  return std::nullopt;
}

ordered_json json_or_null(const std::optional<double>& value) {
  if (!value || !std::isfinite(*value)) return nullptr;
  return *value;
}

ordered_json metrics_to_json(const stats::ClassificationMetrics& m) {
  ordered_json j;
  j["tp"] = m.tp;
  j["fp"] = m.fp;
  j["fn"] = m.fn;
  j["tn"] = m.tn;
  j["accuracy"] = json_or_null(m.accuracy);
  j["precision"] = json_or_null(m.precision);
  j["recall"] = json_or_null(m.recall);
  j["specificity"] = json_or_null(m.specificity);
  j["f1"] = json_or_null(m.f1);
  return j;
}

ordered_json chi2_to_json(const std::optional<stats::ChiSquareResult>& r) {
  if (!r) return nullptr;
  ordered_json j;
  j["statistic"] = r->statistic;
  j["p_value"] = r->p_value;
  return j;
}

}  // namespace

EvaluationReport evaluate(std::span<const EvaluationInputRow> rows,
                          const EvaluationOptions& options) {
  if (rows.empty()) {
    throw Error(Errc::empty_series, "no trials to evaluate");
  }
  options.config.validate();

  EvaluationReport report;
  report.n_trials = static_cast<int>(rows.size());
  report.seed = options.seed;
  report.n_permutations = options.n_permutations;

  // Per-variable association with the raw ratings. Each variable gets its
  // own permutation substream so the report does not depend on evaluation
  // order.
  for (const Variable variable : kAllVariables) {
    VariableAssociation assoc;
    assoc.variable = variable;
    std::vector<double> values, ratings;
    for (const auto& row : rows) {
      const auto value = variable_value(row.features, variable);
      if (value && std::isfinite(*value)) {
        values.push_back(*value);
        ratings.push_back(static_cast<double>(row.reported_comfort));
      }
    }
    assoc.n = static_cast<int>(values.size());
    if (assoc.n >= 2) {
      const std::uint64_t sub_seed =
          mix_seed(options.seed, static_cast<std::uint64_t>(variable));
      assoc.dcor = stats::permutation_pvalue(values, ratings, options.n_permutations, sub_seed);
    }
    report.associations.push_back(std::move(assoc));
  }

  // Binary predictors against the binarized comfort.
  for (const PredictorKind kind :
       {PredictorKind::min_distance, PredictorKind::min_pttc, PredictorKind::composite}) {
    PredictorEvaluation eval;
    eval.kind = kind;
    std::vector<int> preds, truths;
    for (const auto& row : rows) {
      const auto predictions = predict_all(row.features, options.config);
      const Prediction& p = predictions.at(kind);
      if (!p.applicable) continue;
      preds.push_back(p.value);
      truths.push_back(binarize_comfort(row.reported_comfort));
    }
    eval.n = static_cast<int>(preds.size());
    if (eval.n == 0) {
      report.predictors.push_back(std::move(eval));
      continue;
    }
    eval.table = stats::contingency(preds, truths);
    try {
      eval.chi2_uncorrected = stats::chi_square(eval.table, false);
      eval.chi2_yates = stats::chi_square(eval.table, true);
    } catch (const Error& e) {
      if (e.code() != Errc::zero_marginal) throw;
    }
    eval.odds = stats::odds_ratio(eval.table);
    eval.metrics_standard =
        stats::classification_metrics(eval.table, stats::MetricOrientation::standard);
    eval.metrics_transposed =
        stats::classification_metrics(eval.table, stats::MetricOrientation::transposed);
    report.predictors.push_back(std::move(eval));
  }
  return report;
}

std::string report_to_json_string(const EvaluationReport& report, const PredictorConfig& config,
                                  const RunManifest* manifest) {
  ordered_json j;
  j["schema"] = "pedcomfort.evaluation/1";
  if (manifest) {
    j["manifest"] = {{"run_id", manifest->run_id}, {"command", manifest->command}};
  }
  j["n_trials"] = report.n_trials;
  j["seed"] = report.seed;
  j["n_permutations"] = report.n_permutations;

  ordered_json assoc_json;
  for (const auto& assoc : report.associations) {
    ordered_json entry;
    entry["n"] = assoc.n;
    if (assoc.dcor) {
      entry["dcor"] = assoc.dcor->dcor;
      entry["p_value"] = assoc.dcor->p_value;
      entry["constant_input"] = assoc.dcor->constant_input;
      entry["seed"] = assoc.dcor->seed;
    } else {
      entry["dcor"] = nullptr;
      entry["p_value"] = nullptr;
    }
    assoc_json[variable_name(assoc.variable)] = entry;
  }
  j["dcor"] = assoc_json;

  ordered_json pred_json;
  for (const auto& eval : report.predictors) {
    ordered_json entry;
    entry["n"] = eval.n;
    entry["contingency"] = {{eval.table.n[0][0], eval.table.n[0][1]},
                            {eval.table.n[1][0], eval.table.n[1][1]}};
    entry["chi_square"] = {{"uncorrected", chi2_to_json(eval.chi2_uncorrected)},
                           {"yates", chi2_to_json(eval.chi2_yates)}};
    entry["odds_ratio"] = {{"value", eval.odds.value},
                           {"haldane_corrected", eval.odds.haldane_corrected}};
    entry["metrics"] = {{"standard", metrics_to_json(eval.metrics_standard)},
                        {"transposed", metrics_to_json(eval.metrics_transposed)}};
    pred_json[predictor_name(eval.kind)] = entry;
  }
  j["predictors"] = pred_json;

  ordered_json config_json = ordered_json::parse(config.to_json_string());
  j["config"] = config_json;
  j["tool_version"] = std::string(kVersion);
  return j.dump(2) + "\n";
}

}  // namespace pedcomfort
