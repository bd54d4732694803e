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

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <unordered_set>

#include "nlsql/error.h"
#include "nlsql/parallel.h"
#include "nlsql/text.h"

namespace nlsql {
namespace {

std::string Hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string JoinLower(const std::vector<std::string>& tokens, std::size_t begin,
                      std::size_t n) {
  std::string out;
  for (std::size_t i = begin; i < begin + n; ++i) {
    if (i > begin) out += ' ';
    out += ToLower(tokens[i]);
  }
  return out;
}

bool StartsUpper(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

TrainingPair Derive(const TrainingPair& parent, std::string nl, const std::string& op,
                    std::uint64_t stream) {
  TrainingPair child = parent;
  child.nl = std::move(nl);
  child.augmentations.push_back(op);
  child.seed_lineage = parent.seed_lineage + "/" + op + ":" + Hex64(stream);
  return child;
}

}  // namespace

AugmentationParams AugmentationParams::Disabled() {
  AugmentationParams p;
  p.paraphrase_duplicates = 0;
  p.paraphrase_prob = 0.0;
  p.dropout_duplicates = 0;
  p.dropout_prob = 0.0;
  return p;
}

void AugmentationParams::Validate() const {
  auto check_prob = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
      ThrowValidation(std::string("augment: ") + name + " must be in [0, 1]");
    }
  };
  check_prob(paraphrase_prob, "paraphrase_prob");
  check_prob(dropout_prob, "dropout_prob");
  if (min_tokens_remaining < 1) ThrowValidation("augment: min_tokens_remaining must be >= 1");
}

ProtectedVocabulary::ProtectedVocabulary(const Schema& schema, const PhraseLexicon& lexicon,
                                         const ValueIndex& values) {
  for (const Table& t : schema.tables()) {
    Add(t.SurfaceForm());
    Add(Pluralize(t.SurfaceForm()));
    for (const Column& c : t.columns) {
      for (const std::string& syn : c.synonyms) {
        Add(syn);
        Add(Pluralize(syn));
      }
    }
  }
  for (const std::string& w : lexicon.ComparatorVocabulary()) Add(w);
  for (const auto& [surface, bindings] : values.entries()) Add(surface);
}

void ProtectedVocabulary::Add(const std::string& phrase) {
  const std::vector<std::string> tokens = TokenTexts(Tokenize(NormalizePhrase(phrase)));
  if (tokens.empty()) return;
  phrases_.insert(JoinStrings(tokens, " "));
  max_tokens_ = std::max(max_tokens_, tokens.size());
}

std::vector<bool> ProtectedVocabulary::Mark(const std::vector<std::string>& tokens) const {
  std::vector<bool> mark(tokens.size(), false);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (IsPlaceholderToken(tokens[i]) || IsPunctuationToken(tokens[i])) mark[i] = true;
    const std::size_t longest = std::min(max_tokens_, tokens.size() - i);
    for (std::size_t n = longest; n >= 1; --n) {
      if (Contains(JoinLower(tokens, i, n))) {
        for (std::size_t j = i; j < i + n; ++j) mark[j] = true;
        break;
      }
    }
  }
  return mark;
}

std::optional<TrainingPair> ParaphrasePair(const TrainingPair& pair,
                                           const ParaphraseIndex& index,
                                           const AugmentationParams& params, RngStream& rng,
                                           std::vector<Replacement>* log) {
  if (pair.nl.empty() || index.empty()) return std::nullopt;
  std::vector<std::string> tokens = TokenTexts(Tokenize(pair.nl));
  const std::size_t max_n = std::min(kMaxParaphraseNgram, index.max_source_tokens());
  std::vector<std::string> out;
  std::vector<Replacement> made;
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t matched = 0;
    const std::vector<ParaphraseEntry>* candidates = nullptr;
    std::string source;
    for (std::size_t n = std::min(max_n, tokens.size() - i); n >= 1; --n) {
      bool blocked = false;
      for (std::size_t j = i; j < i + n; ++j) {
        if (IsPlaceholderToken(tokens[j]) || IsPunctuationToken(tokens[j])) blocked = true;
      }
      if (blocked) continue;
      source = JoinLower(tokens, i, n);
      const auto& c = index.Candidates(source);
      if (!c.empty()) {
        matched = n;
        candidates = &c;
        break;
      }
    }
    if (matched == 0) {
      out.push_back(tokens[i++]);
      continue;
    }
    if (rng.Bernoulli(params.paraphrase_prob)) {
      const std::size_t k = std::min(kParaphraseTopK, candidates->size());
      double total = 0.0;
      for (std::size_t c = 0; c < k; ++c) total += std::max(0.0, (*candidates)[c].score);
      std::size_t pick = 0;
      if (total > 0.0) {
        double u = rng.Uniform() * total;
        for (pick = 0; pick + 1 < k; ++pick) {
          u -= std::max(0.0, (*candidates)[pick].score);
          if (u < 0.0) break;
        }
      } else {
        pick = static_cast<std::size_t>(rng.Below(k));
      }
      std::string target = (*candidates)[pick].target;
      if (StartsUpper(tokens[i])) target = CapitalizeFirst(target);
      for (const std::string& t : TokenTexts(Tokenize(target))) out.push_back(t);
      made.push_back({source, (*candidates)[pick].target});
    } else {
      for (std::size_t j = i; j < i + matched; ++j) out.push_back(tokens[j]);
    }
    i += matched;
  }
  if (made.empty()) return std::nullopt;
  if (log != nullptr) *log = std::move(made);
  return Derive(pair, Detokenize(out), "paraphrase", rng.id());
}

std::optional<TrainingPair> DropoutPair(const TrainingPair& pair,
                                        const ProtectedVocabulary& protected_vocab,
                                        const AugmentationParams& params, RngStream& rng) {
  const std::vector<std::string> tokens = TokenTexts(Tokenize(pair.nl));
  if (tokens.size() <= params.min_tokens_remaining || params.dropout_prob <= 0.0) {
    return std::nullopt;
  }
  const std::vector<bool> keep = protected_vocab.Mark(tokens);
  std::vector<std::size_t> dropped;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!keep[i] && rng.Bernoulli(params.dropout_prob)) dropped.push_back(i);
  }
  while (!dropped.empty() && tokens.size() - dropped.size() < params.min_tokens_remaining) {
    dropped.pop_back();
  }
  if (dropped.empty()) return std::nullopt;
  std::vector<std::string> out;
  std::size_t d = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (d < dropped.size() && dropped[d] == i) {
      ++d;
      continue;
    }
    out.push_back(tokens[i]);
  }
  std::string nl = Detokenize(out);
  if (StartsUpper(pair.nl)) nl = CapitalizeFirst(nl);
  return Derive(pair, std::move(nl), "dropout", rng.id());
}

std::uint64_t AugmentStreamId(std::uint64_t seed, std::size_t pair_index, std::string_view op,
                              std::size_t attempt) {
  return MixStream(MixStream(MixStream(seed, pair_index), Fnv1a(op)), attempt);
}

std::vector<TrainingPair> AugmentationResult::Pairs() const {
  std::vector<TrainingPair> out;
  out.reserve(items.size());
  for (const AugmentedPair& a : items) out.push_back(a.pair);
  return out;
}

AugmentationResult AugmentDetailed(const std::vector<TrainingPair>& pairs,
                                   const ParaphraseIndex& index,
                                   const ProtectedVocabulary& protected_vocab,
                                   const AugmentationParams& params) {
  params.Validate();
  std::vector<std::vector<AugmentedPair>> produced(pairs.size());
  ParallelFor(pairs.size(), params.jobs, [&](std::size_t p) {
    for (std::size_t a = 0; a < params.paraphrase_duplicates; ++a) {
      RngStream rng(AugmentStreamId(params.seed, p, "paraphrase", a));
      std::vector<Replacement> log;
      if (auto child = ParaphrasePair(pairs[p], index, params, rng, &log)) {
        produced[p].push_back({std::move(*child), p, std::move(log)});
      }
    }
    for (std::size_t a = 0; a < params.dropout_duplicates; ++a) {
      RngStream rng(AugmentStreamId(params.seed, p, "dropout", a));
      if (auto child = DropoutPair(pairs[p], protected_vocab, params, rng)) {
        produced[p].push_back({std::move(*child), p, {}});
      }
    }
  });

  AugmentationResult result;
  result.input_count = pairs.size();
  std::unordered_set<std::string> seen;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    seen.insert(DedupKey(pairs[p]));
    result.items.push_back({pairs[p], p, {}});
  }
  for (auto& group : produced) {
    for (AugmentedPair& a : group) {
      if (!seen.insert(DedupKey(a.pair)).second) {
        ++result.discarded_duplicates;
        continue;
      }
      result.items.push_back(std::move(a));
    }
  }
  return result;
}

std::vector<TrainingPair> Augment(const std::vector<TrainingPair>& pairs,
                                  const ParaphraseIndex& index,
                                  const ProtectedVocabulary& protected_vocab,
                                  const AugmentationParams& params) {
  return AugmentDetailed(pairs, index, protected_vocab, params).Pairs();
}

}  // namespace nlsql
