// Copyright 2026 The nlsql Authors.
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

#ifndef NLSQL_MANIFEST_H_
#define NLSQL_MANIFEST_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace nlsql {

std::string Sha256Hex(std::string_view data);
std::string FileSha256(const std::string& path);

struct InputDigest {
  std::string path;
  std::string sha256;
};

struct RunManifest {
  std::string command;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::map<std::string, InputDigest> inputs;  // keyed by flag name
  std::string catalog_version;
  unsigned long long seed = 0;
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  std::map<std::string, InputDigest> outputs;
  double wall_seconds = 0.0;

  void AddInput(const std::string& role, const std::string& path);
  void AddOutput(const std::string& role, const std::string& path);

  nlohmann::ordered_json ToJson() const;
  static RunManifest FromJson(const nlohmann::json& j);
};

std::string ManifestPath(const std::string& output_path);
void WriteManifest(const std::string& path, const RunManifest& manifest);
RunManifest ReadManifest(const std::string& path);

// Files whose current digest differs from the recorded one.
std::vector<std::string> VerifyManifestDigests(const RunManifest& manifest);

}  // namespace nlsql

#endif  // NLSQL_MANIFEST_H_
