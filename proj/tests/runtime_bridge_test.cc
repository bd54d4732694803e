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

#include "nlsql/runtime_bridge.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "nlsql/error.h"
#include "nlsql/generator.h"
#include "test_paths.h"

namespace nlsql {
namespace {

using testing::DataPath;
using testing::FixturePath;

struct Cities {
  Schema schema = LoadSchemaFile(DataPath("cities/schema.json"));
  ValueIndex values = BuildValueIndex(schema, LoadValueFile(DataPath("cities/values.jsonl")));
};

struct Patients {
  Schema schema = LoadSchemaFile(DataPath("patients/schema.json"));
  ValueIndex values = BuildValueIndex(schema, LoadValueFile(DataPath("patients/values.jsonl")));
};

TEST(AnonymizeTest, CaliforniaBecomesState) {
  Cities c;
  const AnonymizeResult r = Anonymize("What are cities whose state is California?", c.schema, c.values);
  EXPECT_EQ(r.nl, "What are cities whose state is @STATE?");
  ASSERT_EQ(r.map.size(), 1u);
  const Binding& b = r.map.entries()[0];
  EXPECT_EQ(b.placeholder, "@STATE");
  EXPECT_EQ(b.table, "cities");
  EXPECT_EQ(b.column, "state");
  EXPECT_EQ(b.constant, "California");
  EXPECT_FALSE(b.ambiguous);
  EXPECT_EQ(r.map.Deanonymize(r.nl), "What are cities whose state is California?");
}

TEST(AnonymizeTest, MultiTokenValueMatchedLongestFirst) {
  Cities c;
  const AnonymizeResult r = Anonymize("show the state of los angeles", c.schema, c.values);
  EXPECT_EQ(r.nl, "show the state of @NAME");
  ASSERT_EQ(r.map.size(), 1u);
  EXPECT_EQ(r.map.entries()[0].constant, "los angeles");
  EXPECT_EQ(r.map.entries()[0].canonical, "Los Angeles");
  EXPECT_EQ(r.map.Deanonymize(r.nl), "show the state of los angeles");
}

TEST(AnonymizeTest, NoConstantsUnchanged) {
  Cities c;
  const AnonymizeResult r = Anonymize("what are all the cities", c.schema, c.values);
  EXPECT_EQ(r.nl, "what are all the cities");
  EXPECT_TRUE(r.map.empty());
}

TEST(AnonymizeTest, RepeatedColumnGetsOrdinalsInReadingOrder) {
  Patients p;
  const AnonymizeResult r = Anonymize("patients with age 20 or age 30", p.schema, p.values);
  EXPECT_EQ(r.nl, "patients with age @AGE_1 or age @AGE_2");
  ASSERT_EQ(r.map.size(), 2u);
  EXPECT_EQ(r.map.entries()[0].placeholder, "@AGE_1");
  EXPECT_EQ(r.map.entries()[0].constant, "20");
  EXPECT_EQ(r.map.entries()[1].placeholder, "@AGE_2");
  EXPECT_EQ(r.map.entries()[1].constant, "30");
  EXPECT_LE(r.map.entries()[0].span_end, r.map.entries()[1].span_begin);
}

TEST(AnonymizeTest, NumericCueSkipsComparatorWords) {
  Patients p;
  const AnonymizeResult r =
      Anonymize("names of patients whose length of stay is at least 7", p.schema, p.values);
  EXPECT_EQ(r.nl, "names of patients whose length of stay is at least @LENGTH_OF_STAY");
}

TEST(AnonymizeTest, BareNumberWithoutCueLeftAlone) {
  Patients p;
  const AnonymizeResult r = Anonymize("show 99 patients", p.schema, p.values);
  EXPECT_EQ(r.nl, "show 99 patients");
  EXPECT_TRUE(r.map.empty());
  EXPECT_FALSE(r.diagnostics.empty());
}

Schema TwoTextColumns() {
  return LoadSchema(R"({"format_version":1,"name":"p","tables":[{"name":"people","columns":[
    {"name":"city","type":"text"},{"name":"birthplace","type":"text"}]}]})");
}

TEST(AnonymizeTest, AmbiguousConstantFlaggedNotGuessed) {
  const Schema s = TwoTextColumns();
  const ValueIndex v = BuildValueIndex(s, ParseValueFile(
      "{\"format_version\":1}\n"
      "{\"table\":\"people\",\"column\":\"city\",\"value\":\"Paris\"}\n"
      "{\"table\":\"people\",\"column\":\"birthplace\",\"value\":\"Paris\"}\n"));
  const AnonymizeResult r = Anonymize("people linked to Paris", s, v);
  ASSERT_EQ(r.map.size(), 1u);
  const Binding& b = r.map.entries()[0];
  EXPECT_TRUE(b.ambiguous);
  EXPECT_EQ(b.candidates.size(), 2u);
  EXPECT_FALSE(r.diagnostics.empty());
  EXPECT_EQ(r.map.Deanonymize(r.nl), "people linked to Paris");
  const std::string sql = "SELECT * FROM people WHERE city = " + b.placeholder;
  EXPECT_THROW(Bind(sql, r.map, s), Error);

  BindingMap resolved = r.map;
  resolved.Resolve(b.placeholder, {"people", "city"});
  EXPECT_EQ(Bind(sql, resolved, s), "SELECT * FROM people WHERE city = 'Paris'");

  const AnonymizeResult cued = Anonymize("people whose city is Paris", s, v);
  ASSERT_EQ(cued.map.size(), 1u);
  EXPECT_FALSE(cued.map.entries()[0].ambiguous);
  EXPECT_EQ(cued.map.entries()[0].column, "city");
}

TEST(BindTest, CaliforniaQuoted) {
  Cities c;
  const AnonymizeResult r = Anonymize("What are cities whose state is California?", c.schema, c.values);
  EXPECT_EQ(Bind("SELECT name FROM cities WHERE state = @STATE", r.map, c.schema),
            "SELECT name FROM cities WHERE state = 'California'");
}

TEST(BindTest, NumericBareAndTextEscaped) {
  Patients p;
  BindingMap m;
  Binding age;
  age.placeholder = "@AGE";
  age.table = "patients";
  age.column = "age";
  age.constant = age.canonical = "20";
  m.Append(age);
  Binding name;
  name.placeholder = "@NAME";
  name.table = "patients";
  name.column = "name";
  name.constant = name.canonical = "O'Hara";
  m.Append(name);
  EXPECT_EQ(Bind("SELECT name FROM patients WHERE age = @AGE AND name = @NAME", m, p.schema),
            "SELECT name FROM patients WHERE age = 20 AND name = 'O''Hara'");
}

TEST(BindTest, NoPlaceholdersUnchangedAndUnboundRejected) {
  Patients p;
  EXPECT_EQ(Bind("SELECT name FROM patients", BindingMap(), p.schema), "SELECT name FROM patients");
  try {
    Bind("SELECT name FROM patients WHERE age = @AGE", BindingMap(), p.schema);
    FAIL() << "expected an unbound-placeholder error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kValidation);
    EXPECT_NE(std::string(e.what()).find("@AGE"), std::string::npos);
  }
}

TEST(ContractTest, ForeignPlaceholderRejected) {
  EXPECT_NO_THROW(CheckTranslatorContract("age @AGE", "SELECT name FROM patients WHERE age = @AGE"));
  EXPECT_NO_THROW(CheckTranslatorContract("age @AGE", "SELECT name FROM patients"));
  EXPECT_THROW(CheckTranslatorContract("names", "SELECT name FROM patients WHERE age = @AGE"), Error);
}

std::vector<TrainingPair> Corpus72() {
  const Schema s = LoadSchemaFile(FixturePath("patients3_schema.json"));
  const ValueIndex v = BuildValueIndex(s, LoadValueFile(FixturePath("patients3_values.jsonl")));
  const TemplateCatalog c = LoadTemplatesFile(FixturePath("select_filter_only.json"), s);
  const PhraseLexicon lex = LoadPhraseLexiconFile(FixturePath("lexicon72.json"));
  return Generate(s, c, lex, v, GenerationConfig()).Pairs();
}

TEST(BaselineTest, ExactMatchWins) {
  const auto corpus = Corpus72();
  BaselineTranslator t(corpus);
  for (const TrainingPair& p : corpus) {
    const auto m = t.Best(p.nl);
    ASSERT_NE(m.pair, nullptr);
    EXPECT_EQ(m.pair->sql, p.sql);
    EXPECT_DOUBLE_EQ(m.similarity, 1.0);
  }
}

TEST(BaselineTest, DisplayVariantMapsToShowSql) {
  // Query tokens {display the names of all patients with age @age}; the best
  // corpus sentences share 8 of 10 distinct tokens ("List ..." / "Show ..."
  // with "with age"), both carrying the same SQL.
  BaselineTranslator t(Corpus72());
  const auto m = t.Best("display the names of all patients with age @AGE");
  ASSERT_NE(m.pair, nullptr);
  EXPECT_EQ(m.pair->sql, "SELECT name FROM patients WHERE age = @AGE");
  EXPECT_DOUBLE_EQ(m.similarity, 0.8);
  EXPECT_EQ(m.pair->nl, "List the names of all patients with age @AGE.");
}

TEST(BaselineTest, EmptyOverlapFallsBackToTieBreakMinimum) {
  const auto corpus = Corpus72();
  BaselineTranslator t(corpus);
  const auto expected = std::min_element(corpus.begin(), corpus.end(), [](const auto& a, const auto& b) {
    return std::tie(a.template_id, a.nl, a.sql) < std::tie(b.template_id, b.nl, b.sql);
  });
  EXPECT_EQ(t.Translate("zzz qqq"), expected->sql);
}

TEST(BaselineTest, InvariantUnderCorpusReordering) {
  auto corpus = Corpus72();
  BaselineTranslator reference(corpus);
  const std::vector<std::string> queries = {
      "display the names of all patients with age @AGE", "diagnosis @DIAGNOSIS", "zzz",
      "list age of patients", "what is the diagnosis whose age @AGE"};
  std::mt19937 gen(11);
  for (int round = 0; round < 10; ++round) {
    std::shuffle(corpus.begin(), corpus.end(), gen);
    BaselineTranslator shuffled(corpus);
    for (const auto& q : queries) {
      EXPECT_EQ(shuffled.Translate(q), reference.Translate(q)) << q;
    }
  }
}

TEST(BaselineTest, ContractHeldOnOutput) {
  BaselineTranslator t(Corpus72());
  EXPECT_EQ(t.Name(), "baseline");
  EXPECT_THROW(BaselineTranslator({}), Error);
}

TEST(SubprocessTest, LineProtocolRoundTrip) {
  auto t = MakeTranslator(
      "subprocess:while IFS= read -r l; do echo \"SELECT name FROM patients -- $l\"; done", {});
  EXPECT_EQ(t->Translate("first"), "SELECT name FROM patients -- first");
  EXPECT_EQ(t->Translate("second @AGE"), "SELECT name FROM patients -- second @AGE");
}

TEST(SubprocessTest, ExitedChildIsRuntimeError) {
  auto t = MakeTranslator("subprocess:true", {});
  try {
    t->Translate("x");
    FAIL() << "expected a runtime error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kRuntime);
  }
}

TEST(MakeTranslatorTest, UnknownKindRejected) {
  EXPECT_THROW(MakeTranslator("neural", {}), Error);
}

}  // namespace
}  // namespace nlsql
