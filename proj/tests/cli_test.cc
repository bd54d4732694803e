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
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nlsql/manifest.h"
#include "nlsql/training_pair.h"
#include "test_paths.h"

namespace nlsql {
namespace {

using testing::DataPath;
using testing::FixturePath;

namespace fs = std::filesystem;

std::string PatientsArgs() {
  return " --schema " + DataPath("patients/schema.json") + " --values " +
         DataPath("patients/values.jsonl") + " ";
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("nlsql_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  int Run(const std::string& args, std::string* out = nullptr) const {
    const std::string log = Path("stdout.txt");
    const std::string cmd = std::string(NLSQL_CLI_PATH) + " " + args + " > " + log + " 2> " +
                            Path("stderr.txt");
    const int status = std::system(cmd.c_str());
    if (out != nullptr) *out = Slurp(log);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  static std::string Slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

TEST_F(CliTest, GenerateWritesPairsAndManifest) {
  const std::string out = Path("pairs.jsonl");
  ASSERT_EQ(Run("generate" + PatientsArgs() + "--seed 7 --out " + out), 0);
  const auto pairs = LoadPairsFile(out);
  EXPECT_GE(pairs.size(), 1000u);
  const RunManifest m = ReadManifest(ManifestPath(out));
  EXPECT_EQ(m.command, "generate");
  EXPECT_EQ(m.seed, 7u);
  EXPECT_FALSE(m.catalog_version.empty());
  EXPECT_NO_THROW(VerifyManifestDigests(m));
  ASSERT_EQ(Run("stats --in " + out), 0);
}

TEST_F(CliTest, IdenticalArgsGiveIdenticalOutputs) {
  ASSERT_EQ(Run("generate" + PatientsArgs() + "--seed 3 --jobs 1 --out " + Path("a.jsonl")), 0);
  ASSERT_EQ(Run("generate" + PatientsArgs() + "--seed 3 --jobs 4 --out " + Path("b.jsonl")), 0);
  EXPECT_EQ(Slurp(Path("a.jsonl")), Slurp(Path("b.jsonl")));
  ASSERT_EQ(Run("augment" + PatientsArgs() + "--seed 3 --jobs 1 --in " + Path("a.jsonl") + " --out " + Path("c.jsonl")), 0);
  ASSERT_EQ(Run("augment" + PatientsArgs() + "--seed 3 --jobs 3 --in " + Path("a.jsonl") + " --out " + Path("d.jsonl")), 0);
  EXPECT_EQ(Slurp(Path("c.jsonl")), Slurp(Path("d.jsonl")));
}

TEST_F(CliTest, AugmentDoesNotShrink) {
  ASSERT_EQ(Run("generate" + PatientsArgs() + "--cap 50 --out " + Path("p.jsonl")), 0);
  ASSERT_EQ(Run("augment" + PatientsArgs() + "--paraphrase-prob 0.3 --in " + Path("p.jsonl") + " --out " + Path("q.jsonl")), 0);
  EXPECT_GT(LoadPairsFile(Path("q.jsonl")).size(), LoadPairsFile(Path("p.jsonl")).size());
  EXPECT_EQ(Run("stats --in " + Path("q.jsonl")), 0);
}

TEST_F(CliTest, StatsDetectsTampering) {
  const std::string out = Path("pairs.jsonl");
  ASSERT_EQ(Run("generate" + PatientsArgs() + "--cap 20 --out " + out), 0);
  std::ofstream(out, std::ios::app) << ToRecordLine(LoadPairsFile(out).front()) << "\n";
  EXPECT_EQ(Run("stats --in " + out), 2);
}

TEST_F(CliTest, DistinctExitCodes) {
  EXPECT_EQ(Run("generate" + PatientsArgs() + "--no-such-flag"), 1);
  EXPECT_EQ(Run("frobnicate"), 1);
  EXPECT_EQ(Run("generate --schema " + Path("absent.json") + " --out " + Path("x.jsonl")), 3);
  std::ofstream(Path("bad.json")) << R"({"format_version":1,"name":"x","tables":[]})";
  EXPECT_EQ(Run("generate --schema " + Path("bad.json") + " --out " + Path("x.jsonl")), 2);
}

TEST_F(CliTest, EnvironmentOverridesFlags) {
  const std::string out = Path("env.jsonl");
  ASSERT_EQ(Run("generate" + PatientsArgs() + "--cap 10 --out " + out), 0);
  const std::string a = Slurp(out);
  ASSERT_EQ(std::system(("NLSQL_CAP=10 NLSQL_SEED=0 " + std::string(NLSQL_CLI_PATH) +
                         " generate" + PatientsArgs() + "--out " + Path("env2.jsonl") + " >/dev/null 2>&1")
                            .c_str()),
            0);
  EXPECT_EQ(a, Slurp(Path("env2.jsonl")));
}

TEST_F(CliTest, AnonymizeAndTranslate) {
  std::string out;
  ASSERT_EQ(Run("anonymize --schema " + DataPath("cities/schema.json") + " --values " +
                    DataPath("cities/values.jsonl") + " 'What are cities whose state is California?'",
                &out),
            0);
  EXPECT_NE(out.find("What are cities whose state is @STATE?"), std::string::npos) << out;

  const std::string fixture = " --schema " + FixturePath("patients3_schema.json") + " --values " +
                              FixturePath("patients3_values.jsonl") + " ";
  ASSERT_EQ(Run("generate" + fixture + "--templates " + FixturePath("select_filter_only.json") +
                " --lexicon " + FixturePath("lexicon72.json") + " --out " + Path("corpus.jsonl")),
            0);
  ASSERT_EQ(Run("translate" + fixture + "--corpus " + Path("corpus.jsonl") +
                    " 'Show the names of all patients with age 20.'",
                &out),
            0);
  EXPECT_NE(out.find("SELECT name FROM patients WHERE age = 20"), std::string::npos) << out;
}

TEST_F(CliTest, EvaluateReportsPerVariantTable) {
  ASSERT_EQ(Run("generate" + PatientsArgs() + "--out " + Path("corpus.jsonl")), 0);
  std::string out;
  ASSERT_EQ(Run("evaluate" + PatientsArgs() + "--translator baseline --corpus " + Path("corpus.jsonl") + " --benchmark " +
                    DataPath("patients/benchmark") + " --db " + DataPath("patients/seed.sql") +
                    " --out " + Path("verdicts.jsonl"),
                &out),
            0);
  for (const char* v : {"naive", "syntactic", "lexical", "morphological", "semantic", "missing", "mixed",
                        "overall"}) {
    EXPECT_NE(out.find(v), std::string::npos) << v;
  }
  EXPECT_TRUE(fs::exists(Path("verdicts.jsonl")));
  EXPECT_TRUE(fs::exists(ManifestPath(Path("verdicts.jsonl"))));
}

}  // namespace
}  // namespace nlsql
