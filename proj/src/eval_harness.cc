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

#include "nlsql/eval_harness.h"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "json.hpp"
#include "nlsql/error.h"
#include "nlsql/sql_subset.h"
#include "nlsql/text.h"

namespace nlsql {
namespace {

namespace fs = std::filesystem;

void AddCase(BenchmarkLoad& load, EvalCase c) {
  const SqlCheckResult check = CheckSqlSubset(c.gold_sql);
  if (!check.ok) ThrowValidation(c.origin + ": gold SQL outside subset: " + check.error);
  ++load.counts[c.variant];
  load.cases.push_back(std::move(c));
}

std::vector<std::string> NonTrailingLines(const std::string& text) {
  std::vector<std::string> lines = SplitLines(text);
  while (!lines.empty() && Trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

BenchmarkLoad LoadBenchmarkDirectory(const fs::path& dir) {
  std::vector<fs::path> nl_files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const fs::path& p = entry.path();
    if (p.extension() == ".nl") nl_files.push_back(p);
    if (p.extension() == ".sql" && !fs::exists(fs::path(p).replace_extension(".nl"))) {
      ThrowValidation(p.string() + ": SQL file without matching .nl file");
    }
  }
  std::map<Variant, fs::path> by_variant;
  for (const fs::path& p : nl_files) {
    const std::string stem = p.stem().string();
    const auto v = ParseVariant(stem);
    if (!v) ThrowValidation(p.string() + ": unknown variant '" + stem + "'");
    by_variant[*v] = p;
  }
  BenchmarkLoad load;
  for (const auto& [variant, nl_path] : by_variant) {
    const fs::path sql_path = fs::path(nl_path).replace_extension(".sql");
    if (!fs::exists(sql_path)) ThrowValidation(nl_path.string() + ": missing " + sql_path.string());
    const std::vector<std::string> nl = NonTrailingLines(ReadFile(nl_path.string()));
    const std::vector<std::string> sql = NonTrailingLines(ReadFile(sql_path.string()));
    if (nl.empty() && sql.empty()) {
      load.warnings.push_back(nl_path.string() + ": empty variant file");
      continue;
    }
    if (nl.size() != sql.size()) {
      ThrowValidation(nl_path.string() + ": " + std::to_string(nl.size()) + " NL lines vs " +
                      std::to_string(sql.size()) + " SQL lines (line " +
                      std::to_string(std::min(nl.size(), sql.size()) + 1) + " unmatched)");
    }
    for (std::size_t i = 0; i < nl.size(); ++i) {
      const std::string origin = nl_path.string() + ":" + std::to_string(i + 1);
      if (Trim(nl[i]).empty() || Trim(sql[i]).empty()) {
        ThrowValidation(origin + ": malformed case (empty NL or SQL)");
      }
      AddCase(load, {Trim(nl[i]), Trim(sql[i]), variant, origin});
    }
  }
  if (load.cases.empty() && load.warnings.empty()) {
    load.warnings.push_back(dir.string() + ": no benchmark cases found");
  }
  return load;
}

}  // namespace

std::string_view VariantName(Variant v) {
  switch (v) {
    case Variant::kNaive:
      return "naive";
    case Variant::kSyntactic:
      return "syntactic";
    case Variant::kLexical:
      return "lexical";
    case Variant::kMorphological:
      return "morphological";
    case Variant::kSemantic:
      return "semantic";
    case Variant::kMissing:
      return "missing";
    case Variant::kMixed:
      return "mixed";
  }
  return "naive";
}

std::optional<Variant> ParseVariant(std::string_view name) {
  for (Variant v : kAllVariants) {
    if (VariantName(v) == name) return v;
  }
  return std::nullopt;
}

BenchmarkLoad ParseBenchmarkJsonl(std::string_view document, const std::string& origin) {
  BenchmarkLoad load;
  const std::vector<std::string> lines = SplitLines(document);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string where = origin + ":" + std::to_string(i + 1);
    if (Trim(lines[i]).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(lines[i]);
    } catch (const nlohmann::json::exception& e) {
      ThrowParse(where + ": malformed case: " + e.what());
    }
    if (!j.is_object() || !j.contains("nl") || !j.contains("sql") || !j.contains("variant") ||
        !j["nl"].is_string() || !j["sql"].is_string() || !j["variant"].is_string()) {
      ThrowParse(where + ": malformed case: need string fields nl, sql, variant");
    }
    const std::string label = j["variant"].get<std::string>();
    const auto v = ParseVariant(label);
    if (!v) ThrowValidation(where + ": unknown variant '" + label + "'");
    AddCase(load, {j["nl"].get<std::string>(), j["sql"].get<std::string>(), *v, where});
  }
  if (load.cases.empty()) load.warnings.push_back(origin + ": empty benchmark file");
  return load;
}

BenchmarkLoad LoadBenchmark(const std::string& path) {
  std::error_code ec;
  if (fs::is_directory(path, ec)) return LoadBenchmarkDirectory(path);
  return ParseBenchmarkJsonl(ReadFile(path), path);
}

std::string_view StageName(FailureStage stage) {
  switch (stage) {
    case FailureStage::kNone:
      return "none";
    case FailureStage::kAnonymize:
      return "anonymize";
    case FailureStage::kTranslate:
      return "translate";
    case FailureStage::kBind:
      return "bind";
    case FailureStage::kExecute:
      return "execute";
    case FailureStage::kMismatch:
      return "mismatch";
    case FailureStage::kHarness:
      return "harness";
  }
  return "none";
}

double Accuracy::Exact() const {
  return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

std::string Accuracy::Display() const {
  if (total == 0) return "n/a";
  const unsigned long long hundredths =
      static_cast<unsigned long long>(correct) * 10000ULL / static_cast<unsigned long long>(total);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%llu.%02llu", hundredths / 100, hundredths % 100);
  return buf;
}

std::string EvalReport::Table() const {
  std::ostringstream out;
  char line[128];
  std::snprintf(line, sizeof(line), "%-14s %8s %8s %10s\n", "variant", "correct", "total",
                "accuracy");
  out << line;
  auto row = [&](std::string_view name, const Accuracy& a) {
    std::snprintf(line, sizeof(line), "%-14.*s %8zu %8zu %9s%%\n", static_cast<int>(name.size()),
                  name.data(), a.correct, a.total, a.Display().c_str());
    out << line;
  };
  for (const auto& [variant, acc] : per_variant) row(VariantName(variant), acc);
  row("overall", overall);
  if (harness_failures > 0) out << "harness failures: " << harness_failures << "\n";
  return out.str();
}

std::string EvalReport::VerdictRecords() const {
  std::string out;
  for (const CaseVerdict& v : verdicts) {
    nlohmann::ordered_json j;
    j["index"] = v.index;
    j["variant"] = VariantName(v.variant);
    j["nl"] = v.nl;
    j["anonymized_nl"] = v.anonymized_nl;
    j["predicted_sql"] = v.predicted_sql;
    j["bound_sql"] = v.bound_sql;
    j["correct"] = v.correct;
    j["stage"] = StageName(v.stage);
    j["message"] = v.message;
    out += j.dump();
    out += '\n';
  }
  return out;
}

EvalReport BuildReport(std::vector<CaseVerdict> verdicts) {
  EvalReport report;
  for (const CaseVerdict& v : verdicts) {
    Accuracy& a = report.per_variant[v.variant];
    ++a.total;
    ++report.overall.total;
    if (v.correct) {
      ++a.correct;
      ++report.overall.correct;
    }
    if (v.stage == FailureStage::kHarness) ++report.harness_failures;
  }
  report.verdicts = std::move(verdicts);
  return report;
}

EvalReport Evaluate(Translator& translator, const std::vector<EvalCase>& cases,
                    const Database& database, const Schema& schema,
                    const ValueIndex& value_index) {
  const Anonymizer anonymizer(schema, value_index);
  std::vector<CaseVerdict> verdicts;
  verdicts.reserve(cases.size());
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const EvalCase& c = cases[i];
    CaseVerdict v;
    v.index = i;
    v.variant = c.variant;
    v.nl = c.nl;
    auto fail = [&](FailureStage stage, const std::string& message) {
      v.stage = stage;
      v.message = message;
    };
    try {
      ResultTable gold;
      try {
        gold = database.Query(c.gold_sql);
      } catch (const Error& e) {
        fail(FailureStage::kHarness, c.origin + ": gold SQL failed: " + e.what());
        verdicts.push_back(std::move(v));
        continue;
      }
      AnonymizeResult anon;
      try {
        anon = anonymizer.Run(c.nl);
        v.anonymized_nl = anon.nl;
      } catch (const Error& e) {
        fail(FailureStage::kAnonymize, e.what());
        verdicts.push_back(std::move(v));
        continue;
      }
      try {
        v.predicted_sql = translator.Translate(anon.nl);
        CheckTranslatorContract(anon.nl, v.predicted_sql);
      } catch (const Error& e) {
        fail(FailureStage::kTranslate, e.what());
        verdicts.push_back(std::move(v));
        continue;
      }
      try {
        v.bound_sql = Bind(v.predicted_sql, anon.map, schema);
      } catch (const Error& e) {
        fail(FailureStage::kBind, e.what());
        verdicts.push_back(std::move(v));
        continue;
      }
      ResultTable predicted;
      try {
        predicted = database.Query(v.bound_sql);
      } catch (const Error& e) {
        fail(FailureStage::kExecute, e.what());
        verdicts.push_back(std::move(v));
        continue;
      }
      v.correct = ResultsMatch(predicted, gold);
      if (!v.correct) fail(FailureStage::kMismatch, "result rows differ from gold");
    } catch (const std::exception& e) {
      fail(FailureStage::kHarness, e.what());
    }
    verdicts.push_back(std::move(v));
  }
  return BuildReport(std::move(verdicts));
}

}  // namespace nlsql
