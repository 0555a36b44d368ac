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

#include "pedcomfort/feature_io.hpp"

#include <sstream>

#include "csv.hpp"
#include "pedcomfort/errors.hpp"

namespace pedcomfort {

namespace {

std::string optional_cell(const std::optional<double>& value) {
  return value ? csv::format_double(*value) : std::string();
}

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

}  // namespace

std::string features_to_csv(const std::vector<FeatureRow>& rows) {
  std::string out = "trial_id,v,d_min,d_lat,rho,t_p,d_tp,flags\n";
  for (const auto& row : rows) {
    const auto& f = row.features;
    out += row.trial_id + ',' + optional_cell(f.v) + ',' + optional_cell(f.d_min) + ',' +
           optional_cell(f.d_lat) + ',' + optional_cell(f.rho) + ',' + optional_cell(f.t_p) +
           ',' + optional_cell(f.d_tp) + ',' + format_flags(f.flags) + '\n';
  }
  return out;
}

void write_features_csv(const std::vector<FeatureRow>& rows, const std::filesystem::path& path) {
  csv::write_text_file(path, features_to_csv(rows));
}

std::vector<FeatureRow> read_features_csv(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) {
    throw Error(Errc::bad_format, path.string() + " is empty");
  }
  const auto header = csv::parse_header(lines[0]);
  const std::string ctx = path.string();
  const std::size_t c_id = header.require("trial_id", ctx);
  const std::size_t c_v = header.require("v", ctx);
  const std::size_t c_dmin = header.require("d_min", ctx);
  const std::size_t c_dlat = header.require("d_lat", ctx);
  const std::size_t c_rho = header.require("rho", ctx);
  const std::size_t c_tp = header.require("t_p", ctx);
  const std::size_t c_dtp = header.require("d_tp", ctx);
  const std::size_t c_flags = header.require("flags", ctx);

  std::vector<FeatureRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = csv::split_line(lines[i]);
    if (fields.size() != header.names.size()) {
      throw Error(Errc::bad_format,
                  ctx + " row " + std::to_string(i + 1) + " has " +
                      std::to_string(fields.size()) + " fields");
    }
    const std::string row_ctx = ctx + " row " + std::to_string(i + 1);
    FeatureRow row;
    row.trial_id = fields[c_id];
    row.features.v = csv::parse_optional_double(fields[c_v], row_ctx);
    row.features.d_min = csv::parse_optional_double(fields[c_dmin], row_ctx);
    row.features.d_lat = csv::parse_optional_double(fields[c_dlat], row_ctx);
    row.features.rho = csv::parse_optional_double(fields[c_rho], row_ctx);
    row.features.t_p = csv::parse_optional_double(fields[c_tp], row_ctx);
    row.features.d_tp = csv::parse_optional_double(fields[c_dtp], row_ctx);
    row.features.flags = parse_flags(fields[c_flags]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string labels_to_csv(const std::vector<LabelRow>& rows) {
  std::string out = "trial_id,reported_comfort\n";
  for (const auto& row : rows) {
    out += row.trial_id + ',' + std::to_string(row.reported_comfort) + '\n';
  }
  return out;
}

void write_labels_csv(const std::vector<LabelRow>& rows, const std::filesystem::path& path) {
  csv::write_text_file(path, labels_to_csv(rows));
}

std::vector<LabelRow> read_labels_csv(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) {
    throw Error(Errc::bad_format, path.string() + " is empty");
  }
  const auto header = csv::parse_header(lines[0]);
  const std::string ctx = path.string();
  const std::size_t c_id = header.require("trial_id", ctx);
  const std::size_t c_comfort = header.require("reported_comfort", ctx);
  std::vector<LabelRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = csv::split_line(lines[i]);
    if (fields.size() != header.names.size()) {
      throw Error(Errc::bad_format,
                  ctx + " row " + std::to_string(i + 1) + " has " +
                      std::to_string(fields.size()) + " fields");
    }
    LabelRow row;
    row.trial_id = fields[c_id];
    row.reported_comfort = static_cast<int>(
        csv::parse_long(fields[c_comfort], ctx + " row " + std::to_string(i + 1)));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw Error(Errc::bad_format, ctx + " holds no label rows");
  }
  return rows;
}

}  // namespace pedcomfort
