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

#include "nlsql/augmenter.h"

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "nlsql/error.h"
#include "nlsql/generator.h"
#include "nlsql/sql_subset.h"
#include "nlsql/text.h"
#include "test_paths.h"

namespace nlsql {
namespace {

using testing::DataPath;
using testing::FixturePath;

TrainingPair MakePair(std::string nl, std::string sql) {
  TrainingPair p;
  p.nl = std::move(nl);
  p.sql = std::move(sql);
  p.template_id = "t";
  p.category = "base";
  p.seed_lineage = "gen:0000000000000001";
  return p;
}

ParaphraseIndex LoadIndex(const std::string& fixture) {
  return LoadParaphraseIndex(FixturePath(fixture), 0.0, 100).index;
}

AugmentationParams ParaphraseOnly(double prob, std::size_t dups) {
  AugmentationParams p = AugmentationParams::Disabled();
  p.paraphrase_prob = prob;
  p.paraphrase_duplicates = dups;
  return p;
}

TEST(ParaphraseTest, SingleCandidateReplacesAndKeepsSql) {
  const TrainingPair in = MakePair("Show the names of all patients with age @AGE.",
                                   "SELECT name FROM patients WHERE age = @AGE");
  RngStream rng(7);
  std::vector<Replacement> log;
  const auto out =
      ParaphrasePair(in, LoadIndex("ppdb_show_display.tsv"), ParaphraseOnly(1.0, 1), rng, &log);
  ASSERT_TRUE(out.has_value());
  EXPECT_EQ(out->nl, "Display the names of all patients with age @AGE.");
  EXPECT_EQ(out->sql, in.sql);
  EXPECT_EQ(out->augmentations, std::vector<std::string>{"paraphrase"});
  EXPECT_EQ(out->seed_lineage.rfind(in.seed_lineage + "/paraphrase:", 0), 0u);
  ASSERT_EQ(log.size(), 1u);
  EXPECT_EQ(log[0].source, "show");
  EXPECT_EQ(log[0].target, "display");
}

TEST(ParaphraseTest, LowercasePositionReplaced) {
  const TrainingPair in = MakePair("please enumerate the cities", "SELECT * FROM cities");
  RngStream rng(1);
  const auto out =
      ParaphrasePair(in, LoadIndex("ppdb_enumerate_list.tsv"), ParaphraseOnly(1.0, 1), rng);
  ASSERT_TRUE(out.has_value());
  EXPECT_EQ(out->nl, "please list the cities");
}

TEST(ParaphraseTest, NoMatchOrZeroProbabilityYieldsNothing) {
  const TrainingPair in = MakePair("What is the age of Alice?", "SELECT age FROM patients");
  RngStream rng(1);
  EXPECT_FALSE(ParaphrasePair(in, ParaphraseIndex(), ParaphraseOnly(1.0, 1), rng).has_value());
  EXPECT_FALSE(
      ParaphrasePair(in, LoadIndex("ppdb_show_display.tsv"), ParaphraseOnly(1.0, 1), rng).has_value());
  const TrainingPair show = MakePair("show ages", "SELECT age FROM patients");
  EXPECT_FALSE(
      ParaphrasePair(show, LoadIndex("ppdb_show_display.tsv"), ParaphraseOnly(0.0, 1), rng).has_value());
}

TEST(ParaphraseTest, PlaceholdersNeverRewritten) {
  const ParaphraseIndex index = ParaphraseIndex::FromEntries({{"@age", "years"}}, 0.0, 10);
  const TrainingPair in = MakePair("show @AGE", "SELECT name FROM patients WHERE age = @AGE");
  RngStream rng(3);
  EXPECT_FALSE(ParaphrasePair(in, index, ParaphraseOnly(1.0, 1), rng).has_value());
}

TEST(ParaphraseTest, SelectionFollowsScores) {
  const ParaphraseIndex index = LoadIndex("ppdb_five.tsv");
  const TrainingPair in = MakePair("show ages", "SELECT age FROM patients");
  std::map<std::string, int> counts;
  const int draws = 6000;
  for (int i = 0; i < draws; ++i) {
    RngStream rng(static_cast<std::uint64_t>(i) * 7919 + 1);
    const auto out = ParaphrasePair(in, index, ParaphraseOnly(1.0, 1), rng);
    ASSERT_TRUE(out.has_value());
    ++counts[out->nl.substr(0, out->nl.find(' '))];
  }
  const std::map<std::string, double> score = {{"display", 0.71}, {"showcase", 0.58},
                                               {"demonstrate", 0.62}, {"indicate", 0.35},
                                               {"lay", 0.31}};
  double total = 0;
  for (const auto& [_, s] : score) total += s;
  ASSERT_EQ(counts.size(), score.size());
  for (const auto& [word, s] : score) {
    EXPECT_NEAR(static_cast<double>(counts[word]) / draws, s / total, 0.03) << word;
  }
}

TEST(DropoutTest, RollbackRestoresMinimumLength) {
  ProtectedVocabulary vocab;
  vocab.Add("patients");
  vocab.Add("flu");
  AugmentationParams params = AugmentationParams::Disabled();
  params.dropout_prob = 1.0;
  params.dropout_duplicates = 1;
  params.min_tokens_remaining = 3;
  RngStream rng(5);
  const auto out =
      DropoutPair(MakePair("patients diagnosed with flu", "SELECT * FROM patients"), vocab, params, rng);
  ASSERT_TRUE(out.has_value());
  EXPECT_EQ(out->nl, "patients with flu");
  EXPECT_EQ(out->augmentations, std::vector<std::string>{"dropout"});
}

TEST(DropoutTest, ShortOrProtectedInputsUntouched) {
  ProtectedVocabulary vocab;
  vocab.Add("patients");
  AugmentationParams params = AugmentationParams::Disabled();
  params.dropout_prob = 1.0;
  params.min_tokens_remaining = 3;
  RngStream rng(5);
  EXPECT_FALSE(DropoutPair(MakePair("all patients .", "SELECT * FROM patients"), vocab, params, rng));
  EXPECT_FALSE(DropoutPair(MakePair("patients @AGE @NAME ?", "SELECT * FROM patients WHERE age = @AGE "
                                    "AND name = @NAME"),
                           vocab, params, rng));
  params.dropout_prob = 0.0;
  EXPECT_FALSE(DropoutPair(MakePair("show me all the patients", "SELECT * FROM patients"), vocab,
                           params, rng));
}

TEST(DropoutTest, KeepsPlaceholdersAndSchemaWords) {
  const Schema schema = LoadSchemaFile(DataPath("patients/schema.json"));
  const ValueIndex values = BuildValueIndex(schema, LoadValueFile(DataPath("patients/values.jsonl")));
  const PhraseLexicon lex = LoadPhraseLexiconFile(DataPath("lexicon/phrases.json"));
  const ProtectedVocabulary vocab(schema, lex, values);
  AugmentationParams params = AugmentationParams::Disabled();
  params.dropout_prob = 0.5;
  params.dropout_duplicates = 1;
  const TrainingPair in = MakePair("Show me the names of all patients with an age above @AGE.",
                                   "SELECT name FROM patients WHERE age > @AGE");
  for (std::uint64_t s = 0; s < 200; ++s) {
    RngStream rng(s);
    const auto out = DropoutPair(in, vocab, params, rng);
    if (!out) continue;
    EXPECT_NE(ToLower(out->nl).find("names"), std::string::npos) << out->nl;
    EXPECT_NE(out->nl.find("patients"), std::string::npos) << out->nl;
    EXPECT_NE(out->nl.find("age"), std::string::npos) << out->nl;
    EXPECT_NE(out->nl.find("@AGE"), std::string::npos) << out->nl;
    EXPECT_TRUE(PlaceholdersBalanced(*out));
    EXPECT_EQ(out->sql, in.sql);
  }
}

TEST(AugmentTest, DisabledIsIdentity) {
  const std::vector<TrainingPair> in = {MakePair("show ages", "SELECT age FROM patients"),
                                        MakePair("show names", "SELECT name FROM patients")};
  const AugmentationResult r = AugmentDetailed(in, LoadIndex("ppdb_five.tsv"), ProtectedVocabulary(),
                                               AugmentationParams::Disabled());
  EXPECT_EQ(r.Pairs(), in);
  EXPECT_EQ(r.discarded_duplicates, 0u);
}

TEST(AugmentTest, IdenticalChildrenDeduplicated) {
  const std::vector<TrainingPair> in = {MakePair("show ages", "SELECT age FROM patients")};
  const AugmentationResult r = AugmentDetailed(in, LoadIndex("ppdb_show_display.tsv"),
                                               ProtectedVocabulary(), ParaphraseOnly(1.0, 2));
  ASSERT_EQ(r.items.size(), 2u);
  EXPECT_EQ(r.items[0].pair, in[0]);
  EXPECT_EQ(r.items[1].pair.nl, "display ages");
  EXPECT_EQ(r.items[1].parent, 0u);
  EXPECT_EQ(r.discarded_duplicates, 1u);
}

TEST(AugmentTest, InvalidParamsRejected) {
  AugmentationParams p;
  p.paraphrase_prob = 1.5;
  EXPECT_THROW(Augment({}, ParaphraseIndex(), ProtectedVocabulary(), p), Error);
  p = AugmentationParams();
  p.min_tokens_remaining = 0;
  EXPECT_THROW(Augment({}, ParaphraseIndex(), ProtectedVocabulary(), p), Error);
}

struct Corpus {
  Schema schema = LoadSchemaFile(DataPath("patients/schema.json"));
  ValueIndex values = BuildValueIndex(schema, LoadValueFile(DataPath("patients/values.jsonl")));
  TemplateCatalog catalog = LoadTemplatesFile(DataPath("templates/catalog.json"), schema);
  PhraseLexicon lexicon = LoadPhraseLexiconFile(DataPath("lexicon/phrases.json"));
  ParaphraseIndex index = LoadParaphraseIndex(DataPath("ppdb/sample.tsv"), 0.0, 10).index;
  ProtectedVocabulary vocab{schema, lexicon, values};
  std::vector<TrainingPair> pairs;

  Corpus() {
    GenerationConfig cfg;
    cfg.per_template_cap = 40;
    pairs = Generate(schema, catalog, lexicon, values, cfg).Pairs();
  }
};

TEST(AugmentTest, PreservesSqlPlaceholdersAndInputs) {
  Corpus c;
  AugmentationParams params;
  params.seed = 9;
  const AugmentationResult r = AugmentDetailed(c.pairs, c.index, c.vocab, params);
  ASSERT_GE(r.items.size(), c.pairs.size());
  EXPECT_GT(r.items.size(), c.pairs.size());
  std::set<std::string> keys;
  for (std::size_t i = 0; i < r.items.size(); ++i) {
    const AugmentedPair& a = r.items[i];
    if (i < c.pairs.size()) {
      EXPECT_EQ(a.pair, c.pairs[i]);
      continue;
    }
    EXPECT_EQ(a.pair.sql, c.pairs[a.parent].sql);
    EXPECT_EQ(a.pair.template_id, c.pairs[a.parent].template_id);
    EXPECT_TRUE(PlaceholdersBalanced(a.pair)) << a.pair.nl;
    EXPECT_EQ(NlPlaceholderMultiset(a.pair.nl), NlPlaceholderMultiset(c.pairs[a.parent].nl));
    EXPECT_FALSE(a.pair.augmentations.empty());
    EXPECT_TRUE(keys.insert(DedupKey(a.pair)).second);
  }
}

TEST(AugmentTest, SizeMonotoneInDuplicates) {
  Corpus c;
  std::size_t last = 0;
  for (std::size_t dups = 0; dups <= 4; ++dups) {
    AugmentationParams p;
    p.paraphrase_duplicates = dups;
    p.dropout_duplicates = dups;
    const std::size_t n = Augment(c.pairs, c.index, c.vocab, p).size();
    EXPECT_GE(n, last);
    last = n;
  }
}

TEST(AugmentTest, DeterministicAcrossJobs) {
  Corpus c;
  AugmentationParams p;
  p.seed = 3;
  const std::string a = SerializePairs(Augment(c.pairs, c.index, c.vocab, p));
  p.jobs = 4;
  EXPECT_EQ(a, SerializePairs(Augment(c.pairs, c.index, c.vocab, p)));
  p.seed = 4;
  EXPECT_NE(a, SerializePairs(Augment(c.pairs, c.index, c.vocab, p)));
}

}  // namespace
}  // namespace nlsql
