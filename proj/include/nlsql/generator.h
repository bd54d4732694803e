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

#ifndef NLSQL_GENERATOR_H_
#define NLSQL_GENERATOR_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nlsql/schema.h"
#include "nlsql/template_lexicon.h"
#include "nlsql/training_pair.h"

namespace nlsql {

struct ColumnChoice {
  ColumnRef column;
  std::string surface;  // the synonym used on the NL side

  bool operator==(const ColumnChoice&) const = default;
};

struct FilterChoice {
  ColumnChoice column;
  std::string comparator;
  // Concrete constant; absent when the filter renders a placeholder.
  std::optional<std::string> value;

  bool operator==(const FilterChoice&) const = default;
};

// One value per slot occurrence of a template (plus the speech slots of a
// single NL variant).
struct SlotFilling {
  std::map<SlotId, std::string> tables;
  std::map<SlotId, std::vector<ColumnChoice>> attributes;
  std::map<SlotId, FilterChoice> filters;
  std::map<SlotId, std::string> phrases;

  bool operator==(const SlotFilling&) const = default;
};

struct Instantiation {
  std::size_t nl_variant = 0;
  SlotFilling filling;
};

struct FillingStream {
  std::vector<Instantiation> items;
  std::vector<std::string> diagnostics;
};

struct GenerationConfig {
  std::size_t per_template_cap = 500;
  double balance_ratio_max = 2.0;
  std::uint64_t seed = 0;
  bool anonymize_values = true;
  unsigned jobs = 1;  // 0 = hardware concurrency

  void Validate() const;
};

// All admissible fillings in deterministic order: NL variants, then tables,
// then columns, then lexicon phrases, each in catalog order. A template whose
// slots cannot be filled yields an empty stream plus diagnostics.
FillingStream EnumerateSlotFillings(const TemplatePair& tmpl,
                                    const Schema& schema,
                                    const PhraseLexicon& lexicon,
                                    const ValueIndex& value_index,
                                    bool anonymize_values);

// Substitutes the filling into the NL variant and the SQL template.
TrainingPair InstantiatePair(const TemplatePair& tmpl, std::size_t nl_variant,
                             const SlotFilling& filling, const Schema& schema,
                             const PhraseLexicon& lexicon,
                             std::uint64_t seed_lineage = 0);

// Retained count per template under the cap and cross-template ratio bound.
// The bound is floor(ratio * anchor), where the anchor is the smallest
// min(admissible, cap) over templates with at least one filling.
std::vector<std::size_t> BalanceCounts(const std::vector<std::size_t>& admissible,
                                       std::size_t cap, double ratio);

struct TemplateReport {
  std::string template_id;
  std::size_t admissible = 0;
  std::size_t retained = 0;  // after subsampling, before global dedup
  std::size_t emitted = 0;   // after global dedup
  bool kept_whole = false;
  std::vector<std::string> diagnostics;
};

struct GeneratedPair {
  TrainingPair pair;
  std::size_t template_index = 0;
  Instantiation instantiation;
};

struct GenerationResult {
  std::vector<GeneratedPair> items;
  std::vector<TemplateReport> reports;
  std::size_t ratio_bound = 0;

  std::vector<TrainingPair> Pairs() const;
};

// RNG stream id for one template: hash(seed, template_id).
std::uint64_t TemplateStreamId(std::uint64_t seed, const std::string& template_id);

// Throws kValidation for an empty template set or a schema with no tables.
GenerationResult Generate(const Schema& schema, const TemplateCatalog& catalog,
                          const PhraseLexicon& lexicon,
                          const ValueIndex& value_index,
                          const GenerationConfig& config);

}  // namespace nlsql

#endif  // NLSQL_GENERATOR_H_
