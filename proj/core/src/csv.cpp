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

#include "csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "pedcomfort/errors.hpp"

namespace pedcomfort::csv {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.emplace_back(line.substr(start));
      break;
    }
    fields.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  if (!fields.empty() && !fields.back().empty() && fields.back().back() == '\r') {
    fields.back().pop_back();
  }
  return fields;
}

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view field, const std::string& context) {
  double value = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw Error(Errc::bad_field,
                "cannot parse '" + std::string(field) + "' as a number (" + context + ")");
  }
  return value;
}

long parse_long(std::string_view field, const std::string& context) {
  long value = 0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw Error(Errc::bad_field,
                "cannot parse '" + std::string(field) + "' as an integer (" + context + ")");
  }
  return value;
}

bool parse_bool(std::string_view field, const std::string& context) {
  if (field == "true" || field == "1") return true;
  if (field == "false" || field == "0") return false;
  throw Error(Errc::bad_field,
              "cannot parse '" + std::string(field) + "' as a boolean (" + context + ")");
}

std::optional<double> parse_optional_double(std::string_view field, const std::string& context) {
  if (field.empty()) return std::nullopt;
  return parse_double(field, context);
}

std::size_t Header::require(std::string_view name, const std::string& context) const {
  const auto it = index.find(name);
  if (it == index.end()) {
    throw Error(Errc::missing_column, "column '" + std::string(name) + "' missing in " + context);
  }
  return it->second;
}

std::optional<std::size_t> Header::find(std::string_view name) const {
  const auto it = index.find(name);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

Header parse_header(const std::string& line) {
  Header header;
  header.names = split_line(line);
  for (std::size_t i = 0; i < header.names.size(); ++i) {
    header.index.emplace(header.names[i], i);
  }
  return header;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::io_failure, "cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(Errc::io_failure, "cannot write " + path.string());
  }
  out << content;
  if (!out) {
    throw Error(Errc::io_failure, "write failed for " + path.string());
  }
}

}  // namespace pedcomfort::csv
