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

#ifndef NLSQL_RUNTIME_BRIDGE_H_
#define NLSQL_RUNTIME_BRIDGE_H_

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nlsql/schema.h"
#include "nlsql/template_lexicon.h"
#include "nlsql/training_pair.h"

namespace nlsql {

struct Binding {
  std::string placeholder;  // "@AGE", "@AGE_2"
  std::string table;
  std::string column;
  std::string constant;   // verbatim substring of the original NL
  std::string canonical;  // value substituted into SQL
  std::size_t span_begin = 0;
  std::size_t span_end = 0;
  bool ambiguous = false;
  std::vector<ColumnRef> candidates;  // filled only when ambiguous
};

class BindingMap {
 public:
  const std::vector<Binding>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  const Binding* Find(std::string_view placeholder) const;
  void Append(Binding binding) { entries_.push_back(std::move(binding)); }

  // Picks one of an ambiguous binding's candidates.
  void Resolve(std::string_view placeholder, const ColumnRef& column);

  // Substitutes each placeholder of `anonymized_nl` with its constant.
  std::string Deanonymize(std::string_view anonymized_nl) const;

 private:
  std::vector<Binding> entries_;
};

struct AnonymizeResult {
  std::string nl;
  BindingMap map;
  std::vector<std::string> diagnostics;
};

// Recognizes value-index constants and numeric literals next to a column
// surface form.
class Anonymizer {
 public:
  Anonymizer(const Schema& schema, const ValueIndex& values,
             const PhraseLexicon& lexicon = PhraseLexicon());

  AnonymizeResult Run(std::string_view nl) const;

 private:
  // Columns whose surface form ends at token `last`.
  std::vector<ColumnRef> CueColumns(const std::vector<std::string>& lower,
                                    std::size_t constant_begin) const;

  const Schema* schema_;
  const ValueIndex* values_;
  std::map<std::string, std::vector<ColumnRef>> surfaces_;
  std::size_t max_surface_tokens_ = 0;
  std::set<std::string> comparator_words_;
};

AnonymizeResult Anonymize(std::string_view nl, const Schema& schema,
                          const ValueIndex& value_index);

// Throws kValidation for unbound or ambiguous placeholders and for output
// outside the SQL subset.
std::string Bind(std::string_view sql, const BindingMap& map, const Schema& schema);

class Translator {
 public:
  virtual ~Translator() = default;
  virtual std::string Translate(const std::string& anonymized_nl) = 0;
  virtual std::string Name() const = 0;
};

// Throws kRuntime when `sql` uses a placeholder absent from `anonymized_nl`.
void CheckTranslatorContract(std::string_view anonymized_nl, std::string_view sql);

class BaselineTranslator : public Translator {
 public:
  explicit BaselineTranslator(std::vector<TrainingPair> corpus);

  struct Match {
    const TrainingPair* pair = nullptr;
    double similarity = 0.0;
  };
  Match Best(std::string_view anonymized_nl) const;

  std::string Translate(const std::string& anonymized_nl) override;
  std::string Name() const override { return "baseline"; }

  static std::vector<std::string> SimilarityTokens(std::string_view nl);

 private:
  bool Precedes(std::size_t a, std::size_t b) const;

  std::vector<TrainingPair> corpus_;
  std::vector<std::vector<int>> token_sets_;  // sorted token ids
  std::map<std::string, int> vocabulary_;
  std::map<std::string, std::vector<std::size_t>> exact_;
};

// Line protocol: one anonymized NL written per line, one SQL line read back.
class SubprocessTranslator : public Translator {
 public:
  explicit SubprocessTranslator(std::string command);
  ~SubprocessTranslator() override;
  SubprocessTranslator(const SubprocessTranslator&) = delete;
  SubprocessTranslator& operator=(const SubprocessTranslator&) = delete;

  std::string Translate(const std::string& anonymized_nl) override;
  std::string Name() const override { return "subprocess:" + command_; }

 private:
  std::string command_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
  std::mutex mu_;
};

// "baseline" or "subprocess:<cmd>".
std::unique_ptr<Translator> MakeTranslator(const std::string& kind,
                                           std::vector<TrainingPair> corpus);

}  // namespace nlsql

#endif  // NLSQL_RUNTIME_BRIDGE_H_
