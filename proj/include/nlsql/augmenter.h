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

#ifndef NLSQL_AUGMENTER_H_
#define NLSQL_AUGMENTER_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nlsql/paraphrase_index.h"
#include "nlsql/rng.h"
#include "nlsql/schema.h"
#include "nlsql/template_lexicon.h"
#include "nlsql/training_pair.h"

namespace nlsql {

inline constexpr std::size_t kParaphraseTopK = 10;
inline constexpr std::size_t kMaxParaphraseNgram = 3;

struct AugmentationParams {
  std::size_t paraphrase_duplicates = 3;
  double paraphrase_prob = 0.3;
  std::size_t dropout_duplicates = 1;
  double dropout_prob = 0.15;
  std::size_t min_tokens_remaining = 3;
  std::uint64_t seed = 0;
  unsigned jobs = 1;

  // All counts and probabilities zero.
  static AugmentationParams Disabled();
  void Validate() const;
};

// Lower-cased phrases that dropout must keep: schema surface forms, their
// plurals, comparator words and value surfaces.
class ProtectedVocabulary {
 public:
  ProtectedVocabulary() = default;
  ProtectedVocabulary(const Schema& schema, const PhraseLexicon& lexicon,
                      const ValueIndex& values);

  void Add(const std::string& phrase);
  bool Contains(const std::string& normalized_phrase) const {
    return phrases_.count(normalized_phrase) > 0;
  }
  std::size_t max_tokens() const { return max_tokens_; }

  // Per-token flags: placeholders, punctuation and any token covered by a
  // protected phrase.
  std::vector<bool> Mark(const std::vector<std::string>& tokens) const;

 private:
  std::set<std::string> phrases_;
  std::size_t max_tokens_ = 0;
};

struct Replacement {
  std::string source;
  std::string target;
};

std::optional<TrainingPair> ParaphrasePair(const TrainingPair& pair,
                                           const ParaphraseIndex& index,
                                           const AugmentationParams& params,
                                           RngStream& rng,
                                           std::vector<Replacement>* log = nullptr);

std::optional<TrainingPair> DropoutPair(const TrainingPair& pair,
                                        const ProtectedVocabulary& protected_vocab,
                                        const AugmentationParams& params,
                                        RngStream& rng);

std::uint64_t AugmentStreamId(std::uint64_t seed, std::size_t pair_index,
                              std::string_view op, std::size_t attempt);

struct AugmentedPair {
  TrainingPair pair;
  std::size_t parent = 0;  // index into the input list
  std::vector<Replacement> replacements;
};

struct AugmentationResult {
  // Inputs first, unchanged, then surviving duplicates in input order.
  std::vector<AugmentedPair> items;
  std::size_t input_count = 0;
  std::size_t discarded_duplicates = 0;

  std::vector<TrainingPair> Pairs() const;
};

AugmentationResult AugmentDetailed(const std::vector<TrainingPair>& pairs,
                                   const ParaphraseIndex& index,
                                   const ProtectedVocabulary& protected_vocab,
                                   const AugmentationParams& params);

std::vector<TrainingPair> Augment(const std::vector<TrainingPair>& pairs,
                                  const ParaphraseIndex& index,
                                  const ProtectedVocabulary& protected_vocab,
                                  const AugmentationParams& params);

}  // namespace nlsql

#endif  // NLSQL_AUGMENTER_H_
