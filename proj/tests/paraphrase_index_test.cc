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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "nlsql/error.h"
#include "test_paths.h"

namespace nlsql {
namespace {

using testing::DataPath;
using testing::FixturePath;

std::vector<std::string> Targets(const std::vector<ParaphraseEntry>& es) {
  std::vector<std::string> out;
  for (const auto& e : es) out.push_back(e.target);
  return out;
}

TEST(ParaphraseIndexTest, ShippedShowTargets) {
  const auto r = LoadParaphraseIndex(DataPath("ppdb/sample.tsv"), 0.0, 50);
  EXPECT_TRUE(r.malformed.empty());
  auto show = Targets(r.index.Candidates("show"));
  std::sort(show.begin(), show.end());
  EXPECT_EQ(show,
            (std::vector<std::string>{"demonstrate", "display", "indicate", "lay", "showcase"}));
  const auto en = Targets(r.index.Candidates("enumerate"));
  EXPECT_NE(std::find(en.begin(), en.end(), "list"), en.end());
  EXPECT_NE(std::find(en.begin(), en.end(), "identify"), en.end());
}

TEST(ParaphraseIndexTest, FiveEntryFixtureThresholdKeepsThree) {
  EXPECT_EQ(LoadParaphraseIndex(FixturePath("ppdb_five.tsv"), 0.0, 50).index.entry_count(), 5u);
  // Scores 0.71, 0.62, 0.58 pass; 0.35 and 0.31 do not.
  EXPECT_EQ(LoadParaphraseIndex(FixturePath("ppdb_five.tsv"), 0.5, 50).index.entry_count(), 3u);
}

TEST(ParaphraseIndexTest, TopThreeOfShow) {
  const auto r = LoadParaphraseIndex(FixturePath("ppdb_five.tsv"), 0.0, 50);
  EXPECT_EQ(Targets(LookupParaphrases(r.index, "show", 3)),
            (std::vector<std::string>{"display", "demonstrate", "showcase"}));
  EXPECT_TRUE(LookupParaphrases(r.index, "absent", 3).empty());
  EXPECT_EQ(LookupParaphrases(r.index, "show", 99).size(), 5u);
  EXPECT_THROW(LookupParaphrases(r.index, "show", 0), Error);
}

TEST(ParaphraseIndexTest, MalformedLinesReportedAndSkipped) {
  const auto r = LoadParaphraseIndex(FixturePath("ppdb_malformed.tsv"), 0.0, 50);
  ASSERT_EQ(r.malformed.size(), 3u);
  EXPECT_EQ(r.malformed[0].line_number, 3u);
  EXPECT_EQ(r.malformed[1].line_number, 4u);
  EXPECT_EQ(r.malformed[2].line_number, 6u);
  EXPECT_EQ(r.index.entry_count(), 2u);
  ASSERT_EQ(r.index.Candidates("list").size(), 1u);
  EXPECT_DOUBLE_EQ(r.index.Candidates("list")[0].score, 0.5);
}

TEST(ParaphraseIndexTest, UnreadableFileIsError) {
  EXPECT_THROW(LoadParaphraseIndex("/nonexistent/ppdb.tsv", 0.0, 5), Error);
  EXPECT_THROW(ParseParaphraseIndex("", 1.5, 5), Error);
  EXPECT_THROW(ParseParaphraseIndex("", 0.0, 0), Error);
}

std::vector<ParaphraseEntry> RandomEntries(std::mt19937& gen) {
  const std::vector<std::string> words = {"a", "b", "c", "d", "e", "f"};
  std::vector<ParaphraseEntry> es;
  const int n = static_cast<int>(gen() % 30);
  for (int i = 0; i < n; ++i) {
    es.push_back({words[gen() % 3], words[gen() % words.size()],
                  static_cast<double>(gen() % 11) / 10.0});
  }
  return es;
}

TEST(ParaphraseIndexTest, SortedUnderRandomInsertionOrder) {
  std::mt19937 gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ParaphraseEntry> es = RandomEntries(gen);
    const ParaphraseIndex a = ParaphraseIndex::FromEntries(es, 0.0, 10);
    std::shuffle(es.begin(), es.end(), gen);
    const ParaphraseIndex b = ParaphraseIndex::FromEntries(es, 0.0, 10);
    EXPECT_EQ(a.sources(), b.sources());
    for (const auto& [source, list] : a.sources()) {
      for (std::size_t i = 1; i < list.size(); ++i) {
        const bool ordered = list[i - 1].score > list[i].score ||
                             (list[i - 1].score == list[i].score && list[i - 1].target < list[i].target);
        EXPECT_TRUE(ordered);
      }
      for (const auto& e : list) EXPECT_NE(e.source, e.target);
    }
  }
}

TEST(ParaphraseIndexTest, MonotoneInMinScore) {
  std::mt19937 gen(9);
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<ParaphraseEntry> es = RandomEntries(gen);
    std::size_t previous = SIZE_MAX;
    for (double t = 0.0; t <= 1.0; t += 0.1) {
      const ParaphraseIndex idx = ParaphraseIndex::FromEntries(es, t, 100);
      EXPECT_LE(idx.entry_count(), previous);
      previous = idx.entry_count();
      for (const auto& [s, list] : idx.sources()) {
        for (const auto& e : list) EXPECT_GE(e.score, t);
      }
    }
  }
}

TEST(ParaphraseIndexTest, PerSourceLimit) {
  const auto r = LoadParaphraseIndex(FixturePath("ppdb_five.tsv"), 0.0, 2);
  EXPECT_EQ(Targets(r.index.Candidates("show")), (std::vector<std::string>{"display", "demonstrate"}));
}

}  // namespace
}  // namespace nlsql
