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

#include <signal.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstring>

#include "nlsql/error.h"
#include "nlsql/placeholder.h"
#include "nlsql/sql_subset.h"
#include "nlsql/text.h"

namespace nlsql {
namespace {

bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string JoinRange(const std::vector<std::string>& tokens, std::size_t begin,
                      std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) out += ' ';
    out += tokens[i];
  }
  return out;
}

struct Recognized {
  std::size_t first_token = 0;
  std::size_t last_token = 0;  // inclusive
  ColumnRef column;
  std::string canonical;
  bool ambiguous = false;
  std::vector<ColumnRef> candidates;
};

}  // namespace

const Binding* BindingMap::Find(std::string_view placeholder) const {
  for (const Binding& b : entries_) {
    if (b.placeholder == placeholder) return &b;
  }
  return nullptr;
}

void BindingMap::Resolve(std::string_view placeholder, const ColumnRef& column) {
  for (Binding& b : entries_) {
    if (b.placeholder != placeholder) continue;
    if (std::find(b.candidates.begin(), b.candidates.end(), column) == b.candidates.end()) {
      ThrowValidation("resolve: " + column.table + "." + column.column +
                      " is not a candidate for " + b.placeholder);
    }
    b.table = column.table;
    b.column = column.column;
    b.ambiguous = false;
    return;
  }
  ThrowValidation("resolve: no binding for " + std::string(placeholder));
}

std::string BindingMap::Deanonymize(std::string_view anonymized_nl) const {
  std::string out;
  std::size_t cursor = 0;
  for (const Binding& b : entries_) {
    std::size_t pos = cursor;
    while (true) {
      pos = anonymized_nl.find(b.placeholder, pos);
      if (pos == std::string_view::npos) break;
      const std::size_t end = pos + b.placeholder.size();
      if (end >= anonymized_nl.size() || !IsIdentChar(anonymized_nl[end])) break;
      pos = end;
    }
    if (pos == std::string_view::npos) continue;
    out.append(anonymized_nl.substr(cursor, pos - cursor));
    out += b.constant;
    cursor = pos + b.placeholder.size();
  }
  out.append(anonymized_nl.substr(cursor));
  return out;
}

Anonymizer::Anonymizer(const Schema& schema, const ValueIndex& values,
                       const PhraseLexicon& lexicon)
    : schema_(&schema), values_(&values), comparator_words_(lexicon.ComparatorVocabulary()) {
  auto add = [&](const std::string& phrase, const ColumnRef& ref) {
    const std::vector<std::string> tokens = TokenTexts(Tokenize(NormalizePhrase(phrase)));
    if (tokens.empty()) return;
    auto& refs = surfaces_[JoinRange(tokens, 0, tokens.size())];
    if (std::find(refs.begin(), refs.end(), ref) == refs.end()) refs.push_back(ref);
    max_surface_tokens_ = std::max(max_surface_tokens_, tokens.size());
  };
  for (const Table& t : schema.tables()) {
    for (const Column& c : t.columns) {
      for (const std::string& syn : c.synonyms) {
        add(syn, {t.name, c.name});
        add(Pluralize(syn), {t.name, c.name});
      }
    }
  }
}

std::vector<ColumnRef> Anonymizer::CueColumns(const std::vector<std::string>& lower,
                                              std::size_t constant_begin) const {
  std::size_t j = constant_begin;
  while (j > 0 && comparator_words_.count(lower[j - 1]) > 0) --j;
  for (std::size_t step = 0; step < 2 && j > step; ++step) {
    const std::size_t last = j - 1 - step;
    for (std::size_t m = std::min(max_surface_tokens_, last + 1); m >= 1; --m) {
      auto it = surfaces_.find(JoinRange(lower, last + 1 - m, last + 1));
      if (it != surfaces_.end()) return it->second;
    }
  }
  return {};
}

AnonymizeResult Anonymizer::Run(std::string_view nl) const {
  if (Trim(nl).empty()) ThrowValidation("anonymize: empty NL input");
  const std::vector<Token> tokens = Tokenize(nl);
  std::vector<std::string> lower;
  lower.reserve(tokens.size());
  for (const Token& t : tokens) lower.push_back(ToLower(t.text));

  AnonymizeResult result;
  std::vector<Recognized> found;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const std::string& tok = tokens[i].text;
    if (IsPunctuationToken(tok) || IsPlaceholderToken(tok)) {
      ++i;
      continue;
    }
    if (IsNumericLiteral(tok)) {
      std::vector<ColumnRef> numeric;
      for (const ColumnRef& ref : CueColumns(lower, i)) {
        if (IsNumeric(schema_->GetColumn(ref).data_kind)) numeric.push_back(ref);
      }
      if (!numeric.empty()) {
        Recognized r{i, i, numeric.front(), tok, numeric.size() > 1, {}};
        if (r.ambiguous) r.candidates = numeric;
        found.push_back(std::move(r));
        ++i;
        continue;
      }
    }
    // Longest value-index span starting here.
    bool matched = false;
    const std::size_t longest = std::min(values_->max_tokens(), tokens.size() - i);
    for (std::size_t n = longest; n >= 1 && !matched; --n) {
      bool blocked = false;
      for (std::size_t k = i; k < i + n; ++k) {
        if (IsPlaceholderToken(tokens[k].text)) blocked = true;
      }
      if (blocked || IsPunctuationToken(tokens[i + n - 1].text)) continue;
      const std::string_view span = nl.substr(tokens[i].begin, tokens[i + n - 1].end - tokens[i].begin);
      const std::vector<ValueBinding>& hits = values_->Lookup(span);
      if (hits.empty()) continue;
      std::vector<ColumnRef> columns;
      std::vector<std::string> canon;
      for (const ValueBinding& h : hits) {
        ColumnRef ref{h.table, h.column};
        if (std::find(columns.begin(), columns.end(), ref) == columns.end()) {
          columns.push_back(ref);
          canon.push_back(h.canonical);
        }
      }
      Recognized r{i, i + n - 1, columns.front(), canon.front(), false, {}};
      if (columns.size() > 1) {
        std::vector<ColumnRef> cued;
        for (const ColumnRef& ref : CueColumns(lower, i)) {
          if (std::find(columns.begin(), columns.end(), ref) != columns.end()) cued.push_back(ref);
        }
        if (cued.size() == 1) {
          r.column = cued.front();
          r.canonical = canon[std::find(columns.begin(), columns.end(), cued.front()) - columns.begin()];
        } else {
          r.ambiguous = true;
          r.candidates = columns;
          result.diagnostics.push_back("ambiguous constant '" + std::string(span) + "' matches " +
                                       std::to_string(columns.size()) + " columns");
        }
      }
      found.push_back(std::move(r));
      i += n;
      matched = true;
    }
    if (matched) continue;
    if (IsNumericLiteral(tok)) {
      result.diagnostics.push_back("numeric literal '" + tok + "' has no column cue; left as is");
    } else if (i > 0 && std::isupper(static_cast<unsigned char>(tok[0]))) {
      result.diagnostics.push_back("unrecognized capitalized token '" + tok + "'");
    }
    ++i;
  }

  std::vector<std::string> bases;
  for (const Recognized& r : found) bases.push_back(PlaceholderBase(*schema_, r.column));
  const std::vector<std::string> names = AssignOrdinals(bases);

  std::size_t cursor = 0;
  for (std::size_t k = 0; k < found.size(); ++k) {
    const Recognized& r = found[k];
    Binding b;
    b.placeholder = names[k];
    b.table = r.column.table;
    b.column = r.column.column;
    b.span_begin = tokens[r.first_token].begin;
    b.span_end = tokens[r.last_token].end;
    b.constant = std::string(nl.substr(b.span_begin, b.span_end - b.span_begin));
    b.canonical = r.canonical;
    b.ambiguous = r.ambiguous;
    b.candidates = r.candidates;
    result.nl.append(nl.substr(cursor, b.span_begin - cursor));
    result.nl += b.placeholder;
    cursor = b.span_end;
    result.map.Append(std::move(b));
  }
  result.nl.append(nl.substr(cursor));
  return result;
}

AnonymizeResult Anonymize(std::string_view nl, const Schema& schema,
                          const ValueIndex& value_index) {
  return Anonymizer(schema, value_index).Run(nl);
}

std::string Bind(std::string_view sql, const BindingMap& map, const Schema& schema) {
  std::string out;
  bool in_string = false;
  for (std::size_t i = 0; i < sql.size(); ++i) {
    const char c = sql[i];
    if (in_string) {
      out += c;
      if (c == '\'') {
        if (i + 1 < sql.size() && sql[i + 1] == '\'') {
          out += sql[++i];
        } else {
          in_string = false;
        }
      }
      continue;
    }
    if (c == '\'') {
      in_string = true;
      out += c;
      continue;
    }
    if (c == '@' && i + 1 < sql.size() && std::isalpha(static_cast<unsigned char>(sql[i + 1]))) {
      std::size_t j = i + 1;
      while (j < sql.size() && IsIdentChar(sql[j])) ++j;
      const std::string name(sql.substr(i, j - i));
      const Binding* b = map.Find(name);
      if (b == nullptr) ThrowValidation("bind: unbound placeholder " + name);
      if (b->ambiguous) {
        ThrowValidation("bind: placeholder " + name + " is ambiguous across " +
                        std::to_string(b->candidates.size()) + " columns");
      }
      out += SqlLiteral(b->canonical, schema.GetColumn({b->table, b->column}).data_kind);
      i = j - 1;
      continue;
    }
    out += c;
  }
  const SqlCheckResult check = CheckSqlSubset(out);
  if (!check.ok) ThrowValidation("bind: result outside SQL subset: " + check.error);
  return out;
}

void CheckTranslatorContract(std::string_view anonymized_nl, std::string_view sql) {
  const std::vector<std::string> allowed = NlPlaceholderMultiset(anonymized_nl);
  for (const std::string& p : ExtractSqlPlaceholders(sql)) {
    if (std::find(allowed.begin(), allowed.end(), p) == allowed.end()) {
      ThrowRuntime("translator emitted placeholder " + p + " absent from its input");
    }
  }
}

std::vector<std::string> BaselineTranslator::SimilarityTokens(std::string_view nl) {
  std::vector<std::string> out;
  for (const Token& t : Tokenize(nl)) {
    if (!IsPunctuationToken(t.text)) out.push_back(ToLower(t.text));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BaselineTranslator::BaselineTranslator(std::vector<TrainingPair> corpus)
    : corpus_(std::move(corpus)) {
  if (corpus_.empty()) ThrowValidation("baseline translator: empty corpus");
  token_sets_.reserve(corpus_.size());
  for (std::size_t i = 0; i < corpus_.size(); ++i) {
    std::vector<int> ids;
    for (const std::string& t : SimilarityTokens(corpus_[i].nl)) {
      auto [it, inserted] = vocabulary_.emplace(t, static_cast<int>(vocabulary_.size()));
      ids.push_back(it->second);
    }
    std::sort(ids.begin(), ids.end());
    token_sets_.push_back(std::move(ids));
    exact_[CollapseWhitespace(corpus_[i].nl)].push_back(i);
  }
}

bool BaselineTranslator::Precedes(std::size_t a, std::size_t b) const {
  const TrainingPair& x = corpus_[a];
  const TrainingPair& y = corpus_[b];
  if (x.template_id != y.template_id) return x.template_id < y.template_id;
  if (x.nl != y.nl) return x.nl < y.nl;
  return x.sql < y.sql;
}

BaselineTranslator::Match BaselineTranslator::Best(std::string_view anonymized_nl) const {
  auto exact = exact_.find(CollapseWhitespace(anonymized_nl));
  if (exact != exact_.end()) {
    std::size_t best = exact->second.front();
    for (std::size_t i : exact->second) {
      if (Precedes(i, best)) best = i;
    }
    return {&corpus_[best], 1.0};
  }
  std::vector<int> query;
  for (const std::string& t : SimilarityTokens(anonymized_nl)) {
    auto it = vocabulary_.find(t);
    // Unknown tokens enlarge the union only.
    query.push_back(it == vocabulary_.end() ? -1 - static_cast<int>(query.size()) : it->second);
  }
  std::sort(query.begin(), query.end());

  std::size_t best = 0;
  std::size_t best_inter = 0;
  std::size_t best_union = 0;
  for (std::size_t i = 0; i < corpus_.size(); ++i) {
    const std::vector<int>& s = token_sets_[i];
    std::size_t inter = 0;
    for (std::size_t a = 0, b = 0; a < query.size() && b < s.size();) {
      if (query[a] == s[b]) {
        ++inter;
        ++a;
        ++b;
      } else if (query[a] < s[b]) {
        ++a;
      } else {
        ++b;
      }
    }
    const std::size_t uni = query.size() + s.size() - inter;
    if (i == 0) {
      best_inter = inter;
      best_union = uni;
      continue;
    }
    // Compare inter/uni against best_inter/best_union exactly; 0/0 counts as 0.
    const std::size_t lhs = inter * std::max<std::size_t>(best_union, 1);
    const std::size_t rhs = best_inter * std::max<std::size_t>(uni, 1);
    if (lhs > rhs || (lhs == rhs && Precedes(i, best))) {
      best = i;
      best_inter = inter;
      best_union = uni;
    }
  }
  const double sim = best_union == 0 ? 0.0 : static_cast<double>(best_inter) / best_union;
  return {&corpus_[best], sim};
}

std::string BaselineTranslator::Translate(const std::string& anonymized_nl) {
  return Best(anonymized_nl).pair->sql;
}

SubprocessTranslator::SubprocessTranslator(std::string command) : command_(std::move(command)) {
  if (command_.empty()) ThrowValidation("subprocess translator: empty command");
  ::signal(SIGPIPE, SIG_IGN);
  int in_pipe[2];
  int out_pipe[2];
  if (::pipe(in_pipe) != 0 || ::pipe(out_pipe) != 0) {
    ThrowRuntime(std::string("subprocess translator: pipe: ") + std::strerror(errno));
  }
  pid_ = ::fork();
  if (pid_ < 0) ThrowRuntime(std::string("subprocess translator: fork: ") + std::strerror(errno));
  if (pid_ == 0) {
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    ::close(out_pipe[0]);
    ::close(out_pipe[1]);
    ::execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
}

SubprocessTranslator::~SubprocessTranslator() {
  if (to_child_ >= 0) ::close(to_child_);
  if (from_child_ >= 0) ::close(from_child_);
  if (pid_ > 0) {
    int status = 0;
    ::waitpid(pid_, &status, 0);
  }
}

std::string SubprocessTranslator::Translate(const std::string& anonymized_nl) {
  std::lock_guard<std::mutex> lock(mu_);
  std::string line = anonymized_nl;
  std::replace(line.begin(), line.end(), '\n', ' ');
  line += '\n';
  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = ::write(to_child_, line.data() + written, line.size() - written);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) ThrowRuntime("subprocess translator: write failed (child exited?)");
    written += static_cast<std::size_t>(n);
  }
  while (true) {
    const std::size_t nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string out = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!out.empty() && out.back() == '\r') out.pop_back();
      return out;
    }
    char chunk[4096];
    const ssize_t n = ::read(from_child_, chunk, sizeof(chunk));
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) ThrowRuntime("subprocess translator: child closed its output");
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

std::unique_ptr<Translator> MakeTranslator(const std::string& kind,
                                           std::vector<TrainingPair> corpus) {
  if (kind == "baseline") return std::make_unique<BaselineTranslator>(std::move(corpus));
  const std::string prefix = "subprocess:";
  if (kind.rfind(prefix, 0) == 0) {
    return std::make_unique<SubprocessTranslator>(kind.substr(prefix.size()));
  }
  ThrowValidation("unknown translator '" + kind + "' (expected baseline or subprocess:<cmd>)");
}

}  // namespace nlsql
