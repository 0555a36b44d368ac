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

#include "pedcomfort/manifest.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>

#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "pedcomfort/errors.hpp"
#include "pedcomfort/version.hpp"

namespace pedcomfort {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string now_iso8601() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
  return buf;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const char c : data) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string hash_hex(std::string_view data) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(data)));
  return buf;
}

std::string file_hash_hex(const std::filesystem::path& path) {
  return hash_hex(csv::read_text_file(path));
}

RunManifest make_manifest(const std::string& command, const std::vector<std::string>& args,
                          const std::vector<std::filesystem::path>& input_paths,
                          std::uint64_t seed) {
  RunManifest manifest;
  manifest.command = command;
  manifest.args = args;
  manifest.seed = seed;
  manifest.tool_version = std::string(kVersion);
  manifest.created_at = now_iso8601();

  std::string canonical = command;
  for (const auto& arg : args) canonical += '\x1f' + arg;
  for (const auto& path : input_paths) {
    std::string digest = "missing";
    if (std::filesystem::is_regular_file(path)) {
      digest = file_hash_hex(path);
    } else if (std::filesystem::is_directory(path)) {
      // Hash of the sorted relative file list plus per-file hashes.
      std::vector<std::filesystem::path> files;
      for (const auto& entry : std::filesystem::recursive_directory_iterator(path)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
      }
      std::sort(files.begin(), files.end());
      std::string acc;
      for (const auto& file : files) {
        acc += file.lexically_relative(path).generic_string() + '=' + file_hash_hex(file) + ';';
      }
      digest = hash_hex(acc);
    }
    manifest.inputs.emplace_back(path.generic_string(), digest);
    canonical += '\x1f' + path.generic_string() + '=' + digest;
  }
  canonical += '\x1f' + std::to_string(seed) + '\x1f' + manifest.tool_version;
  manifest.run_id = hash_hex(canonical);
  return manifest;
}

std::string RunManifest::to_json_string() const {
  ordered_json j;
  j["schema"] = "pedcomfort.manifest/1";
  j["run_id"] = run_id;
  j["command"] = command;
  j["args"] = args;
  ordered_json inputs_json = ordered_json::array();
  for (const auto& [path, digest] : inputs) {
    inputs_json.push_back({{"path", path}, {"hash", digest}});
  }
  j["inputs"] = inputs_json;
  j["seed"] = seed;
  j["tool_version"] = tool_version;
  j["created_at"] = created_at;
  return j.dump(2) + "\n";
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
  csv::write_text_file(path, manifest.to_json_string());
}

}  // namespace pedcomfort
