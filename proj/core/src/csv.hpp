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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pedcomfort::csv {

// Plain comma-split; the formats written here never quote fields.
std::vector<std::string> split_line(const std::string& line);

// Shortest representation that round-trips the exact double.
std::string format_double(double value);

double parse_double(std::string_view field, const std::string& context);
long parse_long(std::string_view field, const std::string& context);
bool parse_bool(std::string_view field, const std::string& context);

// Empty field -> nullopt.
std::optional<double> parse_optional_double(std::string_view field, const std::string& context);

struct Header {
  std::vector<std::string> names;
  std::map<std::string, std::size_t, std::less<>> index;

  // Throws MissingColumn naming the column and file.
  std::size_t require(std::string_view name, const std::string& context) const;
  std::optional<std::size_t> find(std::string_view name) const;
};

Header parse_header(const std::string& line);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace pedcomfort::csv
