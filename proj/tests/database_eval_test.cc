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

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include "nlsql/database.h"
#include "nlsql/error.h"
#include "nlsql/eval_harness.h"
#include "nlsql/generator.h"
#include "test_paths.h"

namespace nlsql {
namespace {

using testing::DataPath;

Database Seeded() { return Database::Open(DataPath("patients/seed.sql")); }

std::vector<std::string> Column0(const ResultTable& t) {
  std::vector<std::string> out;
  for (const auto& row : t.rows) out.push_back(CellToString(row.at(0)));
  std::sort(out.begin(), out.end());
  return out;
}

// Expected rows computed by scanning the seed script text.
std::vector<std::string> NamesWithAgeFromSeed(int age) {
  std::ifstream in(DataPath("patients/seed.sql"));
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("INSERT", 0) != 0) continue;
    const auto q1 = line.find('\'');
    const auto q2 = line.find('\'', q1 + 1);
    const auto comma = line.find(',', q2 + 2);
    if (std::stoi(line.substr(q2 + 2, comma - q2 - 2)) == age) out.push_back(line.substr(q1 + 1, q2 - q1 - 1));
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(ExecuteTest, AgeFilterMatchesSeedScan) {
  const Database db = Seeded();
  const ResultTable t = db.Query("SELECT name FROM patients WHERE age = 20");
  EXPECT_EQ(t.columns, std::vector<std::string>{"name"});
  EXPECT_EQ(Column0(t), NamesWithAgeFromSeed(20));
  EXPECT_EQ(Column0(t), (std::vector<std::string>{"Alice", "Emma"}));
}

TEST(ExecuteTest, InvalidSqlIsRuntimeError) {
  const Database db = Seeded();
  try {
    db.Query("SELEC name FROM patients");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kRuntime);
    EXPECT_NE(std::string(e.what()).find("sqlite"), std::string::npos);
  }
}

TEST(ExecuteTest, EmptyResultComparable) {
  const Database db = Seeded();
  const ResultTable t = db.Query("SELECT name FROM patients WHERE age = 999");
  EXPECT_TRUE(t.rows.empty());
  EXPECT_TRUE(ResultsMatch(t, t));
}

TEST(ExecuteTest, DatabaseFromSchemaHoldsSamples) {
  const Schema s = LoadSchemaFile(DataPath("patients/schema.json"));
  const ValueIndex v = BuildValueIndex(s, LoadValueFile(DataPath("patients/values.jsonl")));
  const Database db = CreateDatabaseFromSchema(s, v);
  for (const char* col : {"name", "age", "diagnosis"}) {
    std::vector<std::string> want = v.Samples({"patients", col});
    std::sort(want.begin(), want.end());
    EXPECT_EQ(Column0(db.Query(std::string("SELECT DISTINCT ") + col + " FROM patients")), want) << col;
  }
}

ResultTable Table(std::vector<std::string> cols, std::vector<std::vector<Cell>> rows) {
  return {std::move(cols), std::move(rows)};
}

TEST(ResultsMatchTest, WorkedExamples) {
  const ResultTable gold = Table({"name"}, {{std::string("Alice")}, {std::string("Bob")}});
  EXPECT_TRUE(ResultsMatch(gold, gold));
  const ResultTable wider = Table({"name", "age"}, {{std::string("Alice"), std::int64_t{20}},
                                                    {std::string("Bob"), std::int64_t{20}}});
  EXPECT_TRUE(ResultsMatch(wider, gold));
  EXPECT_FALSE(ResultsMatch(gold, wider));
  const ResultTable one = Table({"name"}, {{std::string("Alice")}});
  EXPECT_FALSE(ResultsMatch(gold, one));
}

TEST(ResultsMatchTest, CellSemantics) {
  EXPECT_TRUE(CellsEqual(Cell{}, Cell{}));
  EXPECT_TRUE(CellsEqual(Cell{std::int64_t{3}}, Cell{3.0}));
  EXPECT_TRUE(CellsEqual(Cell{1.0}, Cell{1.0 + 1e-12}));
  EXPECT_FALSE(CellsEqual(Cell{1.0}, Cell{1.001}));
  EXPECT_FALSE(CellsEqual(Cell{std::string("1")}, Cell{std::int64_t{1}}));
  EXPECT_TRUE(ResultsMatch(Table({"a"}, {{Cell{}}, {Cell{std::int64_t{1}}}}),
                           Table({"b"}, {{Cell{std::int64_t{1}}}, {Cell{}}})));
}

TEST(ResultsMatchTest, DuplicateRowsMatter) {
  const ResultTable bag = Table({"n"}, {{std::string("A")}, {std::string("A")}});
  const ResultTable set = Table({"n"}, {{std::string("A")}});
  EXPECT_FALSE(ResultsMatch(bag, set));
  EXPECT_FALSE(ResultsMatch(set, bag));
}

// Enumerates every injective mapping.
bool OracleMatch(const ResultTable& p, const ResultTable& g) {
  const std::size_t gc = g.columns.size();
  const std::size_t pc = p.columns.size();
  if (gc > pc || p.rows.size() != g.rows.size()) return false;
  std::vector<std::size_t> perm(pc);
  std::iota(perm.begin(), perm.end(), 0);
  auto project = [](const ResultTable& t, const std::vector<std::size_t>& cols) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : t.rows) {
      std::vector<std::string> out;
      for (std::size_t c : cols) out.push_back(r[c].index() == 0 ? "\x01" : CellToString(r[c]));
      rows.push_back(std::move(out));
    }
    std::sort(rows.begin(), rows.end());
    return rows;
  };
  std::vector<std::size_t> gold_cols(gc);
  std::iota(gold_cols.begin(), gold_cols.end(), 0);
  const auto gold_rows = project(g, gold_cols);
  do {
    if (project(p, std::vector<std::size_t>(perm.begin(), perm.begin() + gc)) == gold_rows) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

ResultTable RandomTable(std::mt19937& gen, std::size_t cols, std::size_t rows) {
  ResultTable t;
  for (std::size_t c = 0; c < cols; ++c) t.columns.push_back("c" + std::to_string(c));
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<Cell> row;
    for (std::size_t c = 0; c < cols; ++c) {
      const unsigned k = gen() % 6;
      if (k == 0) row.emplace_back();
      else if (k < 4) row.emplace_back(std::int64_t(gen() % 3));
      else row.emplace_back(std::string(1, static_cast<char>('a' + gen() % 2)));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

TEST(ResultsMatchTest, AgreesWithBruteForceOracle) {
  std::mt19937 gen(2024);
  int positives = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t rows = gen() % 9;
    ResultTable gold = RandomTable(gen, 1 + gen() % 5, rows);
    ResultTable pred;
    if (gen() % 2) {
      // Shuffled superset of the gold columns.
      pred = RandomTable(gen, gold.columns.size() + gen() % (6 - gold.columns.size()), rows);
      std::vector<std::size_t> order(pred.columns.size());
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), gen);
      std::vector<std::size_t> row_order(rows);
      std::iota(row_order.begin(), row_order.end(), 0);
      std::shuffle(row_order.begin(), row_order.end(), gen);
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < gold.columns.size(); ++c) {
          pred.rows[row_order[r]][order[c]] = gold.rows[r][c];
        }
      }
      if (gen() % 4 == 0 && rows > 0) pred.rows[gen() % rows][order[0]] = std::int64_t{7};
    } else {
      pred = RandomTable(gen, 1 + gen() % 5, gen() % 2 ? rows : gen() % 9);
    }
    const bool want = OracleMatch(pred, gold);
    positives += want;
    ASSERT_EQ(ResultsMatch(pred, gold), want) << "trial " << trial;
  }
  EXPECT_GT(positives, 200);
}

TEST(ResultsMatchTest, ExtraColumnsPreserveMatch) {
  std::mt19937 gen(5);
  for (int trial = 0; trial < 300; ++trial) {
    ResultTable t = RandomTable(gen, 1 + gen() % 4, gen() % 8);
    ASSERT_TRUE(ResultsMatch(t, t));
    ResultTable wider = t;
    wider.columns.push_back("extra");
    for (auto& row : wider.rows) row.emplace_back(std::int64_t(gen() % 100));
    EXPECT_TRUE(ResultsMatch(wider, t));
  }
}

TEST(AccuracyTest, DisplayTruncatesAtTwoDecimals) {
  EXPECT_EQ((Accuracy{11, 57}).Display(), "19.29");
  EXPECT_EQ((Accuracy{12, 57}).Display(), "21.05");
  EXPECT_EQ((Accuracy{8, 57}).Display(), "14.03");
  EXPECT_EQ((Accuracy{43, 57}).Display(), "75.43");
  EXPECT_EQ((Accuracy{57, 57}).Display(), "100.00");
  EXPECT_EQ((Accuracy{0, 5}).Display(), "0.00");
  EXPECT_EQ((Accuracy{0, 0}).Display(), "n/a");
  EXPECT_DOUBLE_EQ((Accuracy{11, 57}).Exact(), 11.0 / 57.0);
}

std::vector<CaseVerdict> Synthetic(Variant v, std::size_t total, std::size_t correct) {
  std::vector<CaseVerdict> out(total);
  for (std::size_t i = 0; i < total; ++i) {
    out[i].index = i;
    out[i].variant = v;
    out[i].correct = i < correct;
    out[i].stage = i < correct ? FailureStage::kNone : FailureStage::kMismatch;
  }
  return out;
}

TEST(ReportTest, ZeroCaseVariantsOmittedAndSumsHold) {
  auto verdicts = Synthetic(Variant::kNaive, 57, 11);
  auto more = Synthetic(Variant::kLexical, 57, 12);
  verdicts.insert(verdicts.end(), more.begin(), more.end());
  const EvalReport r = BuildReport(verdicts);
  EXPECT_EQ(r.per_variant.size(), 2u);
  EXPECT_EQ(r.per_variant.at(Variant::kNaive).Display(), "19.29");
  EXPECT_EQ(r.per_variant.at(Variant::kLexical).Display(), "21.05");
  EXPECT_EQ(r.overall.correct, 23u);
  EXPECT_EQ(r.overall.total, 114u);
  EXPECT_EQ(r.per_variant.count(Variant::kSemantic), 0u);
  EXPECT_EQ(r.Table().find("semantic"), std::string::npos);
}

TEST(BenchmarkTest, ShippedDirectoryLoads) {
  const BenchmarkLoad b = LoadBenchmark(DataPath("patients/benchmark"));
  EXPECT_EQ(b.counts.size(), 7u);
  EXPECT_EQ(b.counts.at(Variant::kNaive), 6u);
  const Database db = Seeded();
  for (const EvalCase& c : b.cases) EXPECT_NO_THROW(db.Query(c.gold_sql)) << c.origin;
}

std::string TempDir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("nlsql_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

void WriteText(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

TEST(BenchmarkTest, FiftySevenNaiveCases) {
  std::string nl;
  std::string sql;
  for (int i = 0; i < 57; ++i) {
    nl += "show patients " + std::to_string(i) + "\n";
    sql += "SELECT name FROM patients\n";
  }
  const std::string dir = TempDir("b57");
  WriteText(dir + "/naive.nl", nl);
  WriteText(dir + "/naive.sql", sql);
  const BenchmarkLoad b = LoadBenchmark(dir);
  EXPECT_EQ(b.cases.size(), 57u);
  EXPECT_TRUE(std::all_of(b.cases.begin(), b.cases.end(),
                          [](const EvalCase& c) { return c.variant == Variant::kNaive; }));
}

TEST(BenchmarkTest, EmptyWarnsUnknownVariantFails) {
  const BenchmarkLoad empty = ParseBenchmarkJsonl("", "mem");
  EXPECT_TRUE(empty.cases.empty());
  EXPECT_FALSE(empty.warnings.empty());
  EXPECT_THROW(ParseBenchmarkJsonl(R"({"nl":"x","sql":"SELECT name FROM t","variant":"sarcastic"})",
                                   "mem"),
               Error);
  const std::string dir = TempDir("bad");
  WriteText(dir + "/sarcastic.nl", "x\n");
  WriteText(dir + "/sarcastic.sql", "SELECT name FROM t\n");
  EXPECT_THROW(LoadBenchmark(dir), Error);
}

TEST(BenchmarkTest, MalformedLineNumberReported) {
  try {
    ParseBenchmarkJsonl("{\"nl\":\"a\",\"sql\":\"SELECT a FROM t\",\"variant\":\"naive\"}\n{oops\n", "mem");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("2"), std::string::npos) << e.what();
  }
}

class FixedTranslator : public Translator {
 public:
  explicit FixedTranslator(std::string sql) : sql_(std::move(sql)) {}
  std::string Translate(const std::string&) override { return sql_; }
  std::string Name() const override { return "fixed"; }

 private:
  std::string sql_;
};

struct EvalSetup {
  Schema schema = LoadSchemaFile(DataPath("patients/schema.json"));
  ValueIndex values = BuildValueIndex(schema, LoadValueFile(DataPath("patients/values.jsonl")));
  Database db = Seeded();
  std::vector<EvalCase> cases = {
      {"Show the names of all patients with age 20.", "SELECT name FROM patients WHERE age = 20",
       Variant::kNaive, "a"}};
};

TEST(EvaluateTest, StagesRecorded) {
  EvalSetup s;
  FixedTranslator right("SELECT name, age FROM patients WHERE age = @AGE");
  EvalReport r = Evaluate(right, s.cases, s.db, s.schema, s.values);
  ASSERT_EQ(r.verdicts.size(), 1u);
  EXPECT_TRUE(r.verdicts[0].correct);
  EXPECT_EQ(r.verdicts[0].anonymized_nl, "Show the names of all patients with age @AGE.");
  EXPECT_EQ(r.verdicts[0].bound_sql, "SELECT name, age FROM patients WHERE age = 20");

  FixedTranslator foreign("SELECT name FROM patients WHERE name = @NAME");
  EXPECT_EQ(Evaluate(foreign, s.cases, s.db, s.schema, s.values).verdicts[0].stage,
            FailureStage::kTranslate);
  FixedTranslator broken("SELECT nope FROM patients");
  EXPECT_EQ(Evaluate(broken, s.cases, s.db, s.schema, s.values).verdicts[0].stage,
            FailureStage::kExecute);
  FixedTranslator wrong("SELECT name FROM patients");
  const EvalReport w = Evaluate(wrong, s.cases, s.db, s.schema, s.values);
  EXPECT_EQ(w.verdicts[0].stage, FailureStage::kMismatch);
  EXPECT_EQ(w.overall.correct, 0u);
  EXPECT_EQ(w.harness_failures, 0u);

  s.cases[0].gold_sql = "SELECT missing FROM patients";
  const EvalReport h = Evaluate(right, s.cases, s.db, s.schema, s.values);
  EXPECT_EQ(h.verdicts[0].stage, FailureStage::kHarness);
  EXPECT_EQ(h.harness_failures, 1u);
}

}  // namespace
}  // namespace nlsql
