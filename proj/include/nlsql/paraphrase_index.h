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

#ifndef NLSQL_PARAPHRASE_INDEX_H_
#define NLSQL_PARAPHRASE_INDEX_H_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace nlsql {

struct ParaphraseEntry {
  std::string source;
  std::string target;
  double score = 0.5;

  bool operator==(const ParaphraseEntry&) const = default;
};

struct MalformedLine {
  std::size_t line_number = 0;
  std::string reason;
};

// Normalized phrase -> candidates, score descending with ties broken by
// target. Immutable once built.
class ParaphraseIndex {
 public:
  ParaphraseIndex() = default;

  // Collects entries, keeps the best score per (source, target), applies the
  // threshold and per-source limit, then sorts.
  static ParaphraseIndex FromEntries(std::vector<ParaphraseEntry> entries,
                                     double min_score,
                                     std::size_t max_per_source);

  const std::vector<ParaphraseEntry>& Candidates(std::string_view phrase) const;
  bool empty() const { return by_source_.empty(); }
  std::size_t source_count() const { return by_source_.size(); }
  std::size_t entry_count() const;
  // Longest source phrase in tokens.
  std::size_t max_source_tokens() const { return max_source_tokens_; }

  const std::map<std::string, std::vector<ParaphraseEntry>>& sources() const {
    return by_source_;
  }

 private:
  std::map<std::string, std::vector<ParaphraseEntry>> by_source_;
  std::size_t max_source_tokens_ = 0;
};

struct ParaphraseLoadResult {
  ParaphraseIndex index;
  std::vector<MalformedLine> malformed;  // skipped lines
};

// Tab-separated `source<TAB>target[<TAB>score]`; missing scores default to
// 0.5; blank lines and lines starting with '#' are ignored. Malformed lines
// are skipped and reported. Throws kValidation on bad arguments.
ParaphraseLoadResult ParseParaphraseIndex(std::string_view document,
                                          double min_score,
                                          std::size_t max_per_source);
// Throws kIo when the file is unreadable.
ParaphraseLoadResult LoadParaphraseIndex(const std::string& path,
                                         double min_score,
                                         std::size_t max_per_source);

// Top-k candidates for `phrase`; empty when absent. k must be >= 1.
std::vector<ParaphraseEntry> LookupParaphrases(const ParaphraseIndex& index,
                                               std::string_view phrase,
                                               std::size_t k);

}  // namespace nlsql

#endif  // NLSQL_PARAPHRASE_INDEX_H_
