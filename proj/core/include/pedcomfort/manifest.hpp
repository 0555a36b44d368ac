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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pedcomfort {

// Provenance record written next to every command output. run_id hashes the
// command, input contents, config and seed, so identical runs share it;
// created_at is informational and excluded from the hash.
struct RunManifest {
  std::string run_id;
  std::string command;
  std::vector<std::string> args;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, content hash
  std::uint64_t seed = 0;
  std::string tool_version;
  std::string created_at;  // ISO 8601 UTC

  std::string to_json_string() const;
};

std::uint64_t fnv1a64(std::string_view data);
std::string hash_hex(std::string_view data);
std::string file_hash_hex(const std::filesystem::path& path);

RunManifest make_manifest(const std::string& command, const std::vector<std::string>& args,
                          const std::vector<std::filesystem::path>& input_paths,
                          std::uint64_t seed);

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);

}  // namespace pedcomfort
