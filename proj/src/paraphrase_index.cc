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

#include "nlsql/paraphrase_index.h"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "nlsql/error.h"
#include "nlsql/schema.h"
#include "nlsql/text.h"

namespace nlsql {
namespace {

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

bool ParseScore(std::string_view text, double& out) {
  const std::string trimmed = Trim(text);
  if (trimmed.empty()) return false;
  const char* begin = trimmed.data();
  const char* end = begin + trimmed.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

void CheckArguments(double min_score, std::size_t max_per_source) {
  if (!(min_score >= 0.0 && min_score <= 1.0)) {
    ThrowValidation("paraphrase index: min_score must be in [0, 1]");
  }
  if (max_per_source < 1) {
    ThrowValidation("paraphrase index: max_per_source must be >= 1");
  }
}

}  // namespace

ParaphraseIndex ParaphraseIndex::FromEntries(std::vector<ParaphraseEntry> entries,
                                             double min_score,
                                             std::size_t max_per_source) {
  CheckArguments(min_score, max_per_source);
  ParaphraseIndex index;
  for (ParaphraseEntry& e : entries) {
    e.source = NormalizePhrase(e.source);
    e.target = NormalizePhrase(e.target);
    if (e.source.empty() || e.target.empty() || e.source == e.target) continue;
    if (e.score < min_score) continue;
    std::vector<ParaphraseEntry>& list = index.by_source_[e.source];
    auto same = std::find_if(list.begin(), list.end(), [&](const ParaphraseEntry& o) {
      return o.target == e.target;
    });
    if (same != list.end()) {
      same->score = std::max(same->score, e.score);
    } else {
      list.push_back(std::move(e));
    }
  }
  for (auto& [source, list] : index.by_source_) {
    std::sort(list.begin(), list.end(), [](const ParaphraseEntry& a, const ParaphraseEntry& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.target < b.target;
    });
    if (list.size() > max_per_source) list.resize(max_per_source);
    index.max_source_tokens_ = std::max(index.max_source_tokens_, Tokenize(source).size());
  }
  return index;
}

const std::vector<ParaphraseEntry>& ParaphraseIndex::Candidates(std::string_view phrase) const {
  static const std::vector<ParaphraseEntry> kEmpty;
  auto it = by_source_.find(NormalizePhrase(phrase));
  return it == by_source_.end() ? kEmpty : it->second;
}

std::size_t ParaphraseIndex::entry_count() const {
  std::size_t n = 0;
  for (const auto& [source, list] : by_source_) n += list.size();
  return n;
}

ParaphraseLoadResult ParseParaphraseIndex(std::string_view document, double min_score,
                                          std::size_t max_per_source) {
  CheckArguments(min_score, max_per_source);
  ParaphraseLoadResult result;
  std::vector<ParaphraseEntry> entries;
  std::size_t line_no = 0;
  for (const std::string& raw : SplitLines(document)) {
    ++line_no;
    const std::string trimmed = Trim(raw);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    const std::vector<std::string_view> fields = SplitTabs(raw);
    if (fields.size() < 2 || fields.size() > 3) {
      result.malformed.push_back({line_no, "expected 2 or 3 tab-separated fields"});
      continue;
    }
    ParaphraseEntry e;
    e.source = NormalizePhrase(fields[0]);
    e.target = NormalizePhrase(fields[1]);
    if (e.source.empty() || e.target.empty()) {
      result.malformed.push_back({line_no, "empty source or target"});
      continue;
    }
    if (e.source == e.target) {
      result.malformed.push_back({line_no, "source equals target"});
      continue;
    }
    if (fields.size() == 3 && !Trim(fields[2]).empty()) {
      if (!ParseScore(fields[2], e.score)) {
        result.malformed.push_back({line_no, "unparsable score"});
        continue;
      }
      if (e.score < 0.0 || e.score > 1.0) {
        result.malformed.push_back({line_no, "score outside [0, 1]"});
        continue;
      }
    }
    entries.push_back(std::move(e));
  }
  result.index = ParaphraseIndex::FromEntries(std::move(entries), min_score, max_per_source);
  return result;
}

ParaphraseLoadResult LoadParaphraseIndex(const std::string& path, double min_score,
                                         std::size_t max_per_source) {
  return ParseParaphraseIndex(ReadFile(path), min_score, max_per_source);
}

std::vector<ParaphraseEntry> LookupParaphrases(const ParaphraseIndex& index,
                                               std::string_view phrase, std::size_t k) {
  if (k < 1) ThrowValidation("lookup_paraphrases: k must be >= 1");
  const std::vector<ParaphraseEntry>& all = index.Candidates(phrase);
  const std::size_t n = std::min(k, all.size());
  return {all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n)};
}

}  // namespace nlsql
