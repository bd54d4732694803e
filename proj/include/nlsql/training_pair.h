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

#ifndef NLSQL_TRAINING_PAIR_H_
#define NLSQL_TRAINING_PAIR_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace nlsql {

struct TrainingPair {
  std::string nl;
  std::string sql;
  std::string template_id;
  std::string category;
  std::vector<std::string> augmentations;  // applied op tags, in order
  std::string seed_lineage;

  bool operator==(const TrainingPair&) const = default;
};

// Placeholder tokens of an NL string / SQL string, sorted (a multiset).
std::vector<std::string> NlPlaceholderMultiset(std::string_view nl);
std::vector<std::string> SqlPlaceholderMultiset(std::string_view sql);
bool PlaceholdersBalanced(const TrainingPair& pair);

// Key for exact-duplicate elimination (whitespace-normalized nl and sql).
std::string DedupKey(const TrainingPair& pair);

// One JSON object per line with the fixed field order
// nl, sql, template_id, category, augmentations, seed_lineage.
std::string ToRecordLine(const TrainingPair& pair);
TrainingPair FromRecordLine(std::string_view line);

void WritePairs(std::ostream& out, const std::vector<TrainingPair>& pairs);
std::string SerializePairs(const std::vector<TrainingPair>& pairs);
// Throws kParse naming the offending line.
std::vector<TrainingPair> ParsePairs(std::string_view document);
std::vector<TrainingPair> LoadPairsFile(const std::string& path);

}  // namespace nlsql

#endif  // NLSQL_TRAINING_PAIR_H_
