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

#ifndef NLSQL_TEMPLATE_LEXICON_H_
#define NLSQL_TEMPLATE_LEXICON_H_

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nlsql/schema.h"

namespace nlsql {

inline constexpr int kTemplateFormatVersion = 1;
inline constexpr int kLexiconFormatVersion = 1;

enum class SlotKind {
  kAttribute,
  kTable,
  kFilter,
  kSelectPhrase,
  kFromPhrase,
  kWherePhrase,
  kAggregatePhrase,
  kGroupPhrase,
};

std::string_view SlotKindName(SlotKind kind);
std::optional<SlotKind> ParseSlotKind(std::string_view name);
// Attribute, Table and Filter resolve against the schema; the rest against
// the phrase lexicon.
bool IsDatabaseObjectKind(SlotKind kind);

// Identity of a slot within one template: `{Attribute}` and `{Attribute#2}`
// are different slots, repeated `{Table}` markers are the same slot.
struct SlotId {
  SlotKind kind = SlotKind::kAttribute;
  int index = 1;

  std::string Key() const;  // "Attribute", "Attribute#2"
  auto operator<=>(const SlotId&) const = default;
};

struct SlotMarker {
  SlotId id;
  std::string qualifier;  // "numeric"/"text" or a lexicon sub-key
  bool plural = false;    // written with the "(s)" suffix
};

// Rendered from the foreign key linking {Table} and {Table#2}; SQL only.
struct JoinOnMarker {};

using TemplatePiece = std::variant<std::string, SlotMarker, JoinOnMarker>;

// Parses "{SelectPhrase} the {Attribute}(s) ..." into literal and slot
// pieces. Throws kParse on unterminated or unknown markers.
std::vector<TemplatePiece> ParseTemplateText(std::string_view text);

struct Arity {
  int min = 1;
  int max = 1;
};

struct TemplateSlot {
  SlotId id;
  std::string qualifier;
  Arity arity;
};

enum class ParaphraseCategory { kBase, kSyntactic, kLexical, kMorphological };
std::string_view CategoryName(ParaphraseCategory category);
std::optional<ParaphraseCategory> ParseCategory(std::string_view name);

enum class QueryClass { kSelectFilter, kAggregate, kGroupAggregate, kSimpleNested };
std::string_view QueryClassName(QueryClass query_class);
std::optional<QueryClass> ParseQueryClass(std::string_view name);

struct NlTemplate {
  std::string text;
  std::vector<TemplatePiece> pieces;
  ParaphraseCategory category = ParaphraseCategory::kBase;
};

struct TemplatePair {
  std::string id;
  QueryClass query_class = QueryClass::kSelectFilter;
  std::string sql_text;
  std::vector<TemplatePiece> sql_pieces;
  std::vector<NlTemplate> nl_templates;
  // Comparators a Filter slot may take; restricted per column kind.
  std::vector<std::string> comparators{"="};
  // Table slot each Attribute/Filter slot draws its column from.
  std::map<SlotId, SlotId> owners;
  bool experimental = false;

  // Database-object slots in order of first appearance (tables first).
  std::vector<TemplateSlot> database_slots;

  bool uses_join() const;
  SlotId OwnerOf(const SlotId& slot) const;
  const TemplateSlot* FindSlot(const SlotId& id) const;
  // Speech slots of one NL variant in order of first appearance.
  std::vector<SlotMarker> SpeechSlots(std::size_t nl_variant) const;
};

struct TemplateCatalog {
  std::string version;
  std::vector<TemplatePair> templates;
};

// Parses and validates the template document. Validation covers slot
// balance (every database-object slot of any NL template appears on the SQL
// side and vice versa), slot kinds, qualifiers, and owner references.
TemplateCatalog LoadTemplates(std::string_view document, const Schema& schema);
TemplateCatalog LoadTemplatesFile(const std::string& path, const Schema& schema);

// Comparator phrasing for filters, keyed by comparator and column family.
struct ComparatorPhrase {
  std::string text;     // "=" on text columns: "is"
  std::string numeric;  // "=" on numeric columns: ""
};

class PhraseLexicon {
 public:
  PhraseLexicon();

  // Key is the slot kind name, optionally with ":qualifier".
  const std::vector<std::string>* Find(std::string_view key) const;
  const std::map<std::string, std::vector<std::string>>& phrases() const {
    return phrases_;
  }

  // Throws kValidation if the comparator is unknown.
  const std::string& ComparatorWords(std::string_view comparator,
                                     DataKind kind) const;
  // Lower-cased words appearing in any comparator phrase.
  std::set<std::string> ComparatorVocabulary() const;

  void Add(const std::string& key, std::vector<std::string> phrases);
  void SetComparator(const std::string& comparator, ComparatorPhrase phrase);

 private:
  std::map<std::string, std::vector<std::string>> phrases_;
  std::map<std::string, ComparatorPhrase> comparators_;
};

std::string SpeechKey(const SlotMarker& marker);

// {"format_version": 1, "phrases": {"SelectPhrase": [...], ...},
//  "comparators": {"=": {"text": "is", "numeric": ""}, ...}}
// An empty document yields an empty lexicon.
PhraseLexicon LoadPhraseLexicon(std::string_view document);
// Also checks that every speech slot key used by `catalog` has a phrase.
PhraseLexicon LoadPhraseLexicon(std::string_view document,
                                const TemplateCatalog& catalog);
PhraseLexicon LoadPhraseLexiconFile(const std::string& path);
void CheckLexiconCovers(const PhraseLexicon& lexicon,
                        const TemplateCatalog& catalog);

}  // namespace nlsql

#endif  // NLSQL_TEMPLATE_LEXICON_H_
