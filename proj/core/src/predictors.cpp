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

#include "pedcomfort/predictors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "pedcomfort/errors.hpp"

namespace pedcomfort {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

const char* variable_name(Variable variable) {
  switch (variable) {
    case Variable::speed: return "v";
    case Variable::min_distance: return "d_min";
    case Variable::lateral_distance: return "d_lat";
    case Variable::max_curvature: return "rho";
    case Variable::min_pttc: return "t_p";
    case Variable::distance_at_min_pttc: return "d_tp";
  }
  return "unknown";
}

Variable parse_variable(std::string_view name) {
  for (const Variable v : kAllVariables) {
    if (name == variable_name(v)) return v;
  }
  throw Error(Errc::bad_field, "unknown variable '" + std::string(name) + "'");
}

BinningScheme BinningScheme::defaults() {
  BinningScheme scheme;
  scheme.edges[Variable::min_distance] = {0.0, 0.5, 1.0, 1.5};
  scheme.edges[Variable::lateral_distance] = {0.0, 0.5, 0.75, 1.0};
  scheme.edges[Variable::max_curvature] = {0.0, 0.4, 0.8, 1.2};
  scheme.edges[Variable::min_pttc] = {0.0, 0.35, 0.7, 1.05, 1.4};
  scheme.edges[Variable::distance_at_min_pttc] = {0.0, 0.5, 1.0, 1.5};
  return scheme;
}

int BinningScheme::bin_count(Variable variable) const {
  if (variable == Variable::speed) return 2;
  const auto it = edges.find(variable);
  if (it == edges.end()) {
    throw Error(Errc::invalid_config,
                std::string("no bin edges for variable ") + variable_name(variable));
  }
  return static_cast<int>(it->second.size());
}

BinLabel BinningScheme::last_label(Variable variable) const {
  return static_cast<BinLabel>('A' + bin_count(variable) - 1);
}

BinLabel BinningScheme::assign(Variable variable, double value) const {
  if (variable == Variable::speed) {
    return assign(nearest_speed_group(value));
  }
  if (std::isnan(value)) {
    throw Error(Errc::missing_value,
                std::string("cannot bin NaN for variable ") + variable_name(variable));
  }
  const auto it = edges.find(variable);
  if (it == edges.end()) {
    throw Error(Errc::invalid_config,
                std::string("no bin edges for variable ") + variable_name(variable));
  }
  const auto& e = it->second;
  if (value < e.front()) {
    throw Error(Errc::out_of_range, std::string(variable_name(variable)) + " value " +
                                        csv::format_double(value) + " below first bin edge " +
                                        csv::format_double(e.front()));
  }
  std::size_t bin = e.size() - 1;
  for (std::size_t i = 0; i + 1 < e.size(); ++i) {
    if (value < e[i + 1]) {
      bin = i;
      break;
    }
  }
  return static_cast<BinLabel>('A' + bin);
}

BinLabel BinningScheme::assign(SpeedGroup group) const {
  return group == SpeedGroup::R14 ? 'A' : 'B';
}

void BinningScheme::validate() const {
  for (const Variable v : kAllVariables) {
    if (v == Variable::speed) continue;
    const auto it = edges.find(v);
    if (it == edges.end() || it->second.empty()) {
      throw Error(Errc::invalid_config,
                  std::string("binning scheme misses variable ") + variable_name(v));
    }
    const auto& e = it->second;
    for (std::size_t i = 1; i < e.size(); ++i) {
      if (!(e[i] > e[i - 1])) {
        throw Error(Errc::invalid_config, std::string("bin edges for ") + variable_name(v) +
                                              " are not strictly increasing");
      }
    }
    if (e.size() > 26) {
      throw Error(Errc::invalid_config, "more bins than labels A..Z");
    }
  }
}

std::optional<BinLabel> assign_bin(Variable variable, std::optional<double> value,
                                   const BinningScheme& scheme) {
  if (!value || std::isnan(*value)) return std::nullopt;
  return scheme.assign(variable, *value);
}

WeightTable WeightTable::defaults() {
  WeightTable table;
  table.weights[Variable::speed] = {{'A', 2}, {'B', 0}};
  table.weights[Variable::min_distance] = {{'A', 0}, {'B', 1}, {'C', 2}, {'D', 2}};
  table.weights[Variable::lateral_distance] = {{'A', 0}, {'B', 0}, {'C', 2}, {'D', 1}};
  table.weights[Variable::max_curvature] = {{'A', 1}, {'B', 0}, {'C', 2}, {'D', 0}};
  table.weights[Variable::min_pttc] = {{'A', 0}, {'B', 0}, {'C', 0}, {'D', 2}, {'E', 2}};
  table.weights[Variable::distance_at_min_pttc] = {{'A', 0}, {'B', 1}, {'C', 2}, {'D', 2}};
  return table;
}

int WeightTable::weight(Variable variable, BinLabel bin) const {
  const auto vit = weights.find(variable);
  if (vit != weights.end()) {
    const auto bit = vit->second.find(bin);
    if (bit != vit->second.end()) return bit->second;
  }
  throw Error(Errc::missing_value, std::string("no weight for (") + variable_name(variable) +
                                       ", " + std::string(1, bin) + ")");
}

int WeightTable::max_total() const {
  int total = 0;
  for (const auto& [variable, per_bin] : weights) {
    int best = 0;
    for (const auto& [bin, w] : per_bin) best = std::max(best, w);
    total += best;
  }
  return total;
}

void WeightTable::validate(const BinningScheme& scheme) const {
  for (const Variable v : kAllVariables) {
    const int bins = scheme.bin_count(v);
    for (int i = 0; i < bins; ++i) {
      const int w = weight(v, static_cast<BinLabel>('A' + i));  // throws when missing
      if (w < 0) {
        throw Error(Errc::invalid_config, std::string("negative weight for variable ") +
                                              variable_name(v));
      }
    }
  }
}

int binarize_comfort(int s) {
  if (s < 1 || s > 5) {
    throw Error(Errc::out_of_range, "comfort " + std::to_string(s) + " outside 1..5");
  }
  return s >= 4 ? 1 : 0;
}

const char* predictor_name(PredictorKind kind) {
  switch (kind) {
    case PredictorKind::min_distance: return "min_distance";
    case PredictorKind::min_pttc: return "min_pttc";
    case PredictorKind::composite: return "composite";
  }
  return "unknown";
}

Prediction predict_min_distance(std::optional<double> d_min, const PredictorConfig& config) {
  Prediction p;
  p.kind = PredictorKind::min_distance;
  if (!d_min) {
    p.applicable = false;
    return p;
  }
  p.value = *d_min >= config.min_distance_threshold ? 1 : 0;
  return p;
}

Prediction predict_min_pttc(std::optional<double> t_p, const PredictorConfig& config) {
  Prediction p;
  p.kind = PredictorKind::min_pttc;
  if (!t_p) {
    p.applicable = false;
    return p;
  }
  p.value = *t_p >= config.min_pttc_threshold ? 1 : 0;
  return p;
}

CompositeScore composite_score(const KinematicFeatures& features, const BinningScheme& scheme,
                               const WeightTable& weights) {
  CompositeScore result;
  const bool never_approaching = features.flags.contains(FeatureFlag::never_approaching);
  for (const Variable variable : kAllVariables) {
    std::optional<double> value;
    switch (variable) {
      case Variable::speed: value = features.v; break;
      case Variable::min_distance: value = features.d_min; break;
      case Variable::lateral_distance: value = features.d_lat; break;
      case Variable::max_curvature: value = features.rho; break;
      case Variable::min_pttc:
        value = features.t_p;
        if (!value && never_approaching) value = kInf;
        break;
      case Variable::distance_at_min_pttc: value = features.d_tp; break;
    }
    const auto bin = assign_bin(variable, value, scheme);
    if (!bin) {
      result.missing.push_back(variable);
      continue;
    }
    result.score += weights.weight(variable, *bin);
  }
  return result;
}

Prediction predict_composite(int score, const PredictorConfig& config) {
  Prediction p;
  p.kind = PredictorKind::composite;
  p.value = score >= config.composite_threshold ? 1 : 0;
  p.score = score;
  return p;
}

std::map<PredictorKind, Prediction> predict_all(const KinematicFeatures& features,
                                                const PredictorConfig& config) {
  std::map<PredictorKind, Prediction> out;
  out[PredictorKind::min_distance] = predict_min_distance(features.d_min, config);

  std::optional<double> t_p = features.t_p;
  if (!t_p && features.flags.contains(FeatureFlag::never_approaching)) t_p = kInf;
  out[PredictorKind::min_pttc] = predict_min_pttc(t_p, config);

  const CompositeScore score = composite_score(features, config.bins, config.weights);
  out[PredictorKind::composite] = predict_composite(score.score, config);
  return out;
}

void PredictorConfig::validate() const {
  bins.validate();
  weights.validate(bins);
  if (!(min_distance_threshold >= 0.0) || !(min_pttc_threshold >= 0.0)) {
    throw Error(Errc::invalid_config, "thresholds must be non-negative");
  }
}

namespace {

ordered_json bins_to_json(const BinningScheme& scheme) {
  ordered_json j;
  j["v"] = {{"R14", "A"}, {"R28", "B"}};
  for (const Variable v : kAllVariables) {
    if (v == Variable::speed) continue;
    j[variable_name(v)] = scheme.edges.at(v);
  }
  return j;
}

ordered_json weights_to_json(const WeightTable& table) {
  ordered_json j;
  for (const Variable v : kAllVariables) {
    ordered_json per_bin;
    for (const auto& [bin, w] : table.weights.at(v)) {
      per_bin[std::string(1, bin)] = w;
    }
    j[variable_name(v)] = per_bin;
  }
  return j;
}

}  // namespace

std::string PredictorConfig::to_json_string() const {
  ordered_json j;
  j["schema"] = "pedcomfort.predictor-config/1";
  j["bins"] = bins_to_json(bins);
  j["weights"] = weights_to_json(weights);
  j["thresholds"] = {{"min_distance", min_distance_threshold},
                     {"min_pttc", min_pttc_threshold},
                     {"composite", composite_threshold}};
  j["provenance"] = provenance;
  return j.dump(2) + "\n";
}

void PredictorConfig::save_json(const std::filesystem::path& path) const {
  csv::write_text_file(path, to_json_string());
}

PredictorConfig PredictorConfig::from_json_file(const std::filesystem::path& path) {
  ordered_json j;
  try {
    j = ordered_json::parse(csv::read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::bad_format, "cannot parse " + path.string() + ": " + e.what());
  }
  PredictorConfig config;
  config.provenance = {{"config_source", path.string()}};
  try {
    if (j.contains("bins")) {
      BinningScheme scheme;
      for (const Variable v : kAllVariables) {
        if (v == Variable::speed) continue;
        const auto& edges = j["bins"].at(variable_name(v));
        scheme.edges[v] = edges.get<std::vector<double>>();
      }
      config.bins = scheme;
    }
    if (j.contains("weights")) {
      WeightTable table;
      for (const Variable v : kAllVariables) {
        for (const auto& [key, value] : j["weights"].at(variable_name(v)).items()) {
          if (key.size() != 1 || key[0] < 'A' || key[0] > 'Z') {
            throw Error(Errc::invalid_config, "bad bin label '" + key + "' in " + path.string());
          }
          table.weights[v][key[0]] = value.get<int>();
        }
      }
      config.weights = table;
    }
    if (j.contains("thresholds")) {
      const auto& t = j["thresholds"];
      if (t.contains("min_distance")) config.min_distance_threshold = t["min_distance"].get<double>();
      if (t.contains("min_pttc")) config.min_pttc_threshold = t["min_pttc"].get<double>();
      if (t.contains("composite")) config.composite_threshold = t["composite"].get<int>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::bad_format, "bad predictor config " + path.string() + ": " + e.what());
  }
  config.validate();
  return config;
}

}  // namespace pedcomfort
