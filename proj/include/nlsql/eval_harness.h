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

#ifndef NLSQL_EVAL_HARNESS_H_
#define NLSQL_EVAL_HARNESS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlsql/database.h"
#include "nlsql/runtime_bridge.h"
#include "nlsql/schema.h"

namespace nlsql {

enum class Variant { kNaive, kSyntactic, kLexical, kMorphological, kSemantic, kMissing, kMixed };

inline constexpr Variant kAllVariants[] = {
    Variant::kNaive,    Variant::kSyntactic, Variant::kLexical, Variant::kMorphological,
    Variant::kSemantic, Variant::kMissing,   Variant::kMixed};

std::string_view VariantName(Variant v);
std::optional<Variant> ParseVariant(std::string_view name);

struct EvalCase {
  std::string nl;
  std::string gold_sql;
  Variant variant = Variant::kNaive;
  std::string origin;  // "file:line"
};

struct BenchmarkLoad {
  std::vector<EvalCase> cases;
  std::vector<std::string> warnings;
  std::map<Variant, std::size_t> counts;
};

// A directory of <variant>.nl / <variant>.sql line-aligned files, or a JSONL
// file of {"nl", "sql", "variant"} records.
BenchmarkLoad LoadBenchmark(const std::string& path);
BenchmarkLoad ParseBenchmarkJsonl(std::string_view document, const std::string& origin);

enum class FailureStage { kNone, kAnonymize, kTranslate, kBind, kExecute, kMismatch, kHarness };
std::string_view StageName(FailureStage stage);

struct CaseVerdict {
  std::size_t index = 0;
  Variant variant = Variant::kNaive;
  std::string nl;
  std::string anonymized_nl;
  std::string predicted_sql;
  std::string bound_sql;
  bool correct = false;
  FailureStage stage = FailureStage::kNone;
  std::string message;
};

struct Accuracy {
  std::size_t correct = 0;
  std::size_t total = 0;

  double Exact() const;
  // Percentage with two decimals, truncated toward zero ("19.29").
  std::string Display() const;
};

struct EvalReport {
  std::map<Variant, Accuracy> per_variant;  // variants with zero cases omitted
  Accuracy overall;
  std::vector<CaseVerdict> verdicts;
  std::size_t harness_failures = 0;

  std::string Table() const;
  std::string VerdictRecords() const;  // JSONL, one verdict per line
};

EvalReport BuildReport(std::vector<CaseVerdict> verdicts);

EvalReport Evaluate(Translator& translator, const std::vector<EvalCase>& cases,
                    const Database& database, const Schema& schema,
                    const ValueIndex& value_index);

}  // namespace nlsql

#endif  // NLSQL_EVAL_HARNESS_H_
