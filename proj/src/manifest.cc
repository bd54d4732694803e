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

#include "nlsql/manifest.h"

#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "nlsql/error.h"
#include "nlsql/schema.h"

namespace nlsql {

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    ThrowRuntime("sha256: digest failed");
  }
  std::string hex;
  hex.reserve(len * 2);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof(buf), "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string FileSha256(const std::string& path) { return Sha256Hex(ReadFile(path)); }

void RunManifest::AddInput(const std::string& role, const std::string& path) {
  inputs[role] = {path, FileSha256(path)};
}

void RunManifest::AddOutput(const std::string& role, const std::string& path) {
  outputs[role] = {path, FileSha256(path)};
}

nlohmann::ordered_json RunManifest::ToJson() const {
  auto digests = [](const std::map<std::string, InputDigest>& m) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [role, d] : m) j[role] = {{"path", d.path}, {"sha256", d.sha256}};
    return j;
  };
  nlohmann::ordered_json j;
  j["format_version"] = 1;
  j["command"] = command;
  j["config"] = config;
  j["inputs"] = digests(inputs);
  j["catalog_version"] = catalog_version;
  j["seed"] = seed;
  j["counts"] = counts;
  j["outputs"] = digests(outputs);
  j["wall_seconds"] = wall_seconds;
  return j;
}

RunManifest RunManifest::FromJson(const nlohmann::json& j) {
  RunManifest m;
  try {
    m.command = j.at("command").get<std::string>();
    m.config = j.at("config");
    m.catalog_version = j.value("catalog_version", "");
    m.seed = j.value("seed", 0ULL);
    m.counts = j.at("counts");
    m.wall_seconds = j.value("wall_seconds", 0.0);
    auto read = [](const nlohmann::json& obj, std::map<std::string, InputDigest>& out) {
      for (const auto& [role, d] : obj.items()) {
        out[role] = {d.at("path").get<std::string>(), d.at("sha256").get<std::string>()};
      }
    };
    read(j.at("inputs"), m.inputs);
    read(j.at("outputs"), m.outputs);
  } catch (const nlohmann::json::exception& e) {
    ThrowParse(std::string("manifest: ") + e.what());
  }
  return m;
}

std::string ManifestPath(const std::string& output_path) {
  return output_path + ".manifest.json";
}

void WriteManifest(const std::string& path, const RunManifest& manifest) {
  std::ofstream out(path, std::ios::binary);
  if (!out) ThrowIo("cannot write manifest " + path);
  out << manifest.ToJson().dump(2) << '\n';
  if (!out) ThrowIo("cannot write manifest " + path);
}

RunManifest ReadManifest(const std::string& path) {
  const std::string text = ReadFile(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    ThrowParse(path + ": " + e.what());
  }
  return RunManifest::FromJson(j);
}

std::vector<std::string> VerifyManifestDigests(const RunManifest& manifest) {
  std::vector<std::string> bad;
  for (const auto* group : {&manifest.inputs, &manifest.outputs}) {
    for (const auto& [role, d] : *group) {
      std::error_code ec;
      if (!std::filesystem::exists(d.path, ec) || FileSha256(d.path) != d.sha256) {
        bad.push_back(role + " (" + d.path + ")");
      }
    }
  }
  return bad;
}

}  // namespace nlsql
