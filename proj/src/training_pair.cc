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

#include "nlsql/training_pair.h"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "nlohmann/json.hpp"
#include "nlsql/error.h"
#include "nlsql/schema.h"
#include "nlsql/sql_subset.h"
#include "nlsql/text.h"

namespace nlsql {

std::vector<std::string> NlPlaceholderMultiset(std::string_view nl) {
  std::vector<std::string> out;
  for (const Token& t : Tokenize(nl)) {
    if (IsPlaceholderToken(t.text)) out.push_back(t.text);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> SqlPlaceholderMultiset(std::string_view sql) {
  std::vector<std::string> out = ExtractSqlPlaceholders(sql);
  std::sort(out.begin(), out.end());
  return out;
}

bool PlaceholdersBalanced(const TrainingPair& pair) {
  return NlPlaceholderMultiset(pair.nl) == SqlPlaceholderMultiset(pair.sql);
}

std::string DedupKey(const TrainingPair& pair) {
  return CollapseWhitespace(pair.nl) + '\x1f' + CollapseWhitespace(pair.sql);
}

std::string ToRecordLine(const TrainingPair& pair) {
  nlohmann::ordered_json j;
  j["nl"] = pair.nl;
  j["sql"] = pair.sql;
  j["template_id"] = pair.template_id;
  j["category"] = pair.category;
  j["augmentations"] = pair.augmentations;
  j["seed_lineage"] = pair.seed_lineage;
  return j.dump();
}

TrainingPair FromRecordLine(std::string_view line) {
  nlohmann::json j = nlohmann::json::parse(line);
  if (!j.is_object()) throw std::invalid_argument("record must be an object");
  TrainingPair p;
  p.nl = j.at("nl").get<std::string>();
  p.sql = j.at("sql").get<std::string>();
  p.template_id = j.value("template_id", std::string());
  p.category = j.value("category", std::string());
  if (j.contains("augmentations")) {
    p.augmentations = j["augmentations"].get<std::vector<std::string>>();
  }
  p.seed_lineage = j.value("seed_lineage", std::string());
  return p;
}

void WritePairs(std::ostream& out, const std::vector<TrainingPair>& pairs) {
  for (const TrainingPair& p : pairs) out << ToRecordLine(p) << '\n';
}

std::string SerializePairs(const std::vector<TrainingPair>& pairs) {
  std::ostringstream ss;
  WritePairs(ss, pairs);
  return ss.str();
}

std::vector<TrainingPair> ParsePairs(std::string_view document) {
  std::vector<TrainingPair> pairs;
  std::size_t line_no = 0;
  for (const std::string& line : SplitLines(document)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      pairs.push_back(FromRecordLine(line));
    } catch (const std::exception& e) {
      ThrowParse("pairs line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return pairs;
}

std::vector<TrainingPair> LoadPairsFile(const std::string& path) {
  return ParsePairs(ReadFile(path));
}

}  // namespace nlsql
