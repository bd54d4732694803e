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

#include "nlsql/template_lexicon.h"

#include <algorithm>
#include <cctype>

#include "nlohmann/json.hpp"
#include "nlsql/error.h"
#include "nlsql/text.h"

namespace nlsql {
namespace {

using nlohmann::json;

constexpr SlotKind kAllKinds[] = {
    SlotKind::kAttribute,    SlotKind::kTable,           SlotKind::kFilter,
    SlotKind::kSelectPhrase, SlotKind::kFromPhrase,      SlotKind::kWherePhrase,
    SlotKind::kAggregatePhrase, SlotKind::kGroupPhrase,
};

const char* const kComparators[] = {"=", "<", ">", "<=", ">="};

bool IsKnownComparator(std::string_view c) {
  return std::find(std::begin(kComparators), std::end(kComparators), c) !=
         std::end(kComparators);
}

SlotMarker ParseMarker(std::string_view body, std::string_view context) {
  SlotMarker marker;
  std::string_view name = body;
  if (auto colon = name.find(':'); colon != std::string_view::npos) {
    marker.qualifier = Normalize(name.substr(colon + 1));
    name = name.substr(0, colon);
    if (marker.qualifier.empty()) {
      ThrowParse("empty slot qualifier in '" + std::string(context) + "'");
    }
  }
  if (auto hash = name.find('#'); hash != std::string_view::npos) {
    std::string_view digits = name.substr(hash + 1);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c));
        })) {
      ThrowParse("bad slot index in '{" + std::string(body) + "}'");
    }
    marker.id.index = std::stoi(std::string(digits));
    if (marker.id.index < 1) ThrowParse("slot index must be >= 1 in '{" + std::string(body) + "}'");
    name = name.substr(0, hash);
  }
  auto kind = ParseSlotKind(name);
  if (!kind) ThrowParse("unknown slot kind '" + std::string(name) + "'");
  marker.id.kind = *kind;
  return marker;
}

ParaphraseCategory RequireCategory(const std::string& s, const std::string& where) {
  auto c = ParseCategory(s);
  if (!c) ThrowParse(where + ": unknown paraphrase category '" + s + "'");
  return *c;
}

struct SlotUse {
  std::vector<SlotId> order;
  std::map<SlotId, std::string> qualifiers;
  std::map<SlotId, bool> plural;
  bool join = false;
};

SlotUse CollectSlots(const std::vector<TemplatePiece>& pieces,
                     const std::string& where, bool db_only) {
  SlotUse use;
  for (const TemplatePiece& p : pieces) {
    if (std::holds_alternative<JoinOnMarker>(p)) {
      use.join = true;
      continue;
    }
    const SlotMarker* m = std::get_if<SlotMarker>(&p);
    if (m == nullptr) continue;
    if (db_only && !IsDatabaseObjectKind(m->id.kind)) continue;
    if (std::find(use.order.begin(), use.order.end(), m->id) == use.order.end()) {
      use.order.push_back(m->id);
    }
    if (!m->qualifier.empty()) {
      auto [it, inserted] = use.qualifiers.emplace(m->id, m->qualifier);
      if (!inserted && it->second != m->qualifier) {
        ThrowValidation(where + ": conflicting qualifiers for {" + m->id.Key() + "}");
      }
    }
    if (m->plural) use.plural[m->id] = true;
  }
  return use;
}

std::set<SlotId> DatabaseIds(const SlotUse& use) {
  std::set<SlotId> ids;
  for (const SlotId& id : use.order) {
    if (IsDatabaseObjectKind(id.kind)) ids.insert(id);
  }
  return ids;
}

std::string DescribeIds(const std::set<SlotId>& ids) {
  std::vector<std::string> names;
  for (const SlotId& id : ids) names.push_back("{" + id.Key() + "}");
  return names.empty() ? "(none)" : JoinStrings(names, ", ");
}

TemplatePair ParseTemplate(const json& tj, const Schema& schema) {
  if (!tj.is_object()) ThrowParse("template must be an object");
  TemplatePair t;
  if (!tj.contains("id") || !tj["id"].is_string()) ThrowParse("template: missing string 'id'");
  t.id = tj["id"].get<std::string>();
  const std::string where = "template '" + t.id + "'";
  if (!tj.contains("class") || !tj["class"].is_string()) ThrowParse(where + ": missing 'class'");
  auto qc = ParseQueryClass(tj["class"].get<std::string>());
  if (!qc) ThrowParse(where + ": unknown query class '" + tj["class"].get<std::string>() + "'");
  t.query_class = *qc;
  if (!tj.contains("sql") || !tj["sql"].is_string()) ThrowParse(where + ": missing 'sql'");
  t.sql_text = tj["sql"].get<std::string>();
  t.sql_pieces = ParseTemplateText(t.sql_text);
  if (!tj.contains("nl") || !tj["nl"].is_array()) ThrowParse(where + ": missing 'nl' list");
  for (const json& nj : tj["nl"]) {
    NlTemplate nl;
    if (nj.is_string()) {
      nl.text = nj.get<std::string>();
    } else if (nj.is_object() && nj.contains("text") && nj["text"].is_string()) {
      nl.text = nj["text"].get<std::string>();
      if (nj.contains("category")) {
        nl.category = RequireCategory(nj["category"].get<std::string>(), where);
      }
    } else {
      ThrowParse(where + ": NL template must be a string or {text, category}");
    }
    nl.pieces = ParseTemplateText(nl.text);
    t.nl_templates.push_back(std::move(nl));
  }
  if (t.nl_templates.empty()) ThrowValidation(where + ": empty NL template list");
  if (auto it = tj.find("comparators"); it != tj.end()) {
    t.comparators.clear();
    for (const json& c : *it) {
      const std::string op = c.get<std::string>();
      if (!IsKnownComparator(op)) ThrowValidation(where + ": unknown comparator '" + op + "'");
      t.comparators.push_back(op);
    }
    if (t.comparators.empty()) ThrowValidation(where + ": empty comparator list");
  }
  t.experimental = tj.value("experimental", false);

  // SQL side.
  const SlotUse sql_use = CollectSlots(t.sql_pieces, where + " SQL", false);
  for (const SlotId& id : sql_use.order) {
    if (!IsDatabaseObjectKind(id.kind)) {
      ThrowValidation(where + ": speech slot {" + id.Key() + "} on the SQL side");
    }
  }
  const std::set<SlotId> sql_ids = DatabaseIds(sql_use);
  if (sql_ids.empty()) ThrowValidation(where + ": SQL template has no database-object slots");

  // NL side: slot balance per variant, qualifiers agree with the SQL side.
  std::map<SlotId, std::string> qualifiers = sql_use.qualifiers;
  for (std::size_t v = 0; v < t.nl_templates.size(); ++v) {
    const std::string vwhere = where + " NL variant " + std::to_string(v);
    for (const TemplatePiece& p : t.nl_templates[v].pieces) {
      if (std::holds_alternative<JoinOnMarker>(p)) {
        ThrowValidation(vwhere + ": {JoinOn} is only valid on the SQL side");
      }
    }
    const SlotUse nl_use = CollectSlots(t.nl_templates[v].pieces, vwhere, false);
    const std::set<SlotId> nl_ids = DatabaseIds(nl_use);
    if (nl_ids != sql_ids) {
      ThrowValidation(vwhere + ": slot mismatch: NL side has " + DescribeIds(nl_ids) +
                      ", SQL side has " + DescribeIds(sql_ids));
    }
    for (const auto& [id, q] : nl_use.qualifiers) {
      if (!IsDatabaseObjectKind(id.kind)) continue;
      auto [it, inserted] = qualifiers.emplace(id, q);
      if (!inserted && it->second != q) {
        ThrowValidation(vwhere + ": conflicting qualifiers for {" + id.Key() + "}");
      }
    }
  }

  // Arity.
  std::map<std::string, int> max_arity;
  if (auto it = tj.find("max_arity"); it != tj.end()) {
    for (const auto& [key, value] : it->items()) {
      if (!value.is_number_integer() || value.get<int>() < 1) {
        ThrowValidation(where + ": max_arity for " + key + " must be an integer >= 1");
      }
      max_arity[key] = value.get<int>();
    }
  }

  // Owners: Attribute/Filter slots draw columns from a Table slot.
  if (auto it = tj.find("owners"); it != tj.end()) {
    for (const auto& [key, value] : it->items()) {
      const SlotMarker from = ParseMarker(key, key);
      const SlotMarker to = ParseMarker(value.get<std::string>(), key);
      if (to.id.kind != SlotKind::kTable ||
          (from.id.kind != SlotKind::kAttribute && from.id.kind != SlotKind::kFilter)) {
        ThrowValidation(where + ": owners must map Attribute/Filter slots to Table slots");
      }
      t.owners[from.id] = to.id;
    }
  }

  std::vector<SlotId> ordered;
  for (const SlotId& id : sql_use.order) {
    if (id.kind == SlotKind::kTable) ordered.push_back(id);
  }
  for (const SlotId& id : sql_use.order) {
    if (id.kind != SlotKind::kTable) ordered.push_back(id);
  }
  if (std::none_of(ordered.begin(), ordered.end(),
                   [](const SlotId& id) { return id.kind == SlotKind::kTable; })) {
    ThrowValidation(where + ": SQL template has no {Table} slot");
  }
  for (const SlotId& id : ordered) {
    TemplateSlot slot;
    slot.id = id;
    if (auto q = qualifiers.find(id); q != qualifiers.end()) slot.qualifier = q->second;
    if (id.kind == SlotKind::kTable && !slot.qualifier.empty()) {
      ThrowValidation(where + ": {Table} slots take no qualifier");
    }
    if (id.kind != SlotKind::kTable && !slot.qualifier.empty() &&
        slot.qualifier != "numeric" && slot.qualifier != "text") {
      ThrowValidation(where + ": qualifier '" + slot.qualifier + "' on {" + id.Key() +
                      "} must be numeric or text");
    }
    auto plural = sql_use.plural.find(id);
    if (plural != sql_use.plural.end() && plural->second) {
      auto ma = max_arity.find(id.Key());
      slot.arity.max = ma == max_arity.end() ? 1 : ma->second;
    }
    if (slot.arity.max > 1 && id.kind != SlotKind::kAttribute) {
      ThrowValidation(where + ": only Attribute slots may have arity > 1");
    }
    if (id.kind != SlotKind::kTable) {
      const SlotId owner = t.OwnerOf(id);
      if (std::find(ordered.begin(), ordered.end(), owner) == ordered.end()) {
        ThrowValidation(where + ": {" + id.Key() + "} is owned by missing slot {" +
                        owner.Key() + "}");
      }
    }
    t.database_slots.push_back(slot);
  }
  for (const auto& [key, arity] : max_arity) {
    const SlotMarker m = ParseMarker(key, key);
    if (t.FindSlot(m.id) == nullptr) {
      ThrowValidation(where + ": max_arity names unknown slot " + key);
    }
  }

  if (sql_use.join) {
    const SlotId second{SlotKind::kTable, 2};
    if (t.FindSlot({SlotKind::kTable, 1}) == nullptr || t.FindSlot(second) == nullptr) {
      ThrowValidation(where + ": {JoinOn} requires {Table} and {Table#2}");
    }
  }
  if (schema.tables().empty()) ThrowValidation(where + ": schema has no tables");
  return t;
}

}  // namespace

std::string_view SlotKindName(SlotKind kind) {
  switch (kind) {
    case SlotKind::kAttribute: return "Attribute";
    case SlotKind::kTable: return "Table";
    case SlotKind::kFilter: return "Filter";
    case SlotKind::kSelectPhrase: return "SelectPhrase";
    case SlotKind::kFromPhrase: return "FromPhrase";
    case SlotKind::kWherePhrase: return "WherePhrase";
    case SlotKind::kAggregatePhrase: return "AggregatePhrase";
    case SlotKind::kGroupPhrase: return "GroupPhrase";
  }
  return "Attribute";
}

std::optional<SlotKind> ParseSlotKind(std::string_view name) {
  for (SlotKind k : kAllKinds) {
    if (SlotKindName(k) == name) return k;
  }
  return std::nullopt;
}

bool IsDatabaseObjectKind(SlotKind kind) {
  return kind == SlotKind::kAttribute || kind == SlotKind::kTable ||
         kind == SlotKind::kFilter;
}

std::string SlotId::Key() const {
  std::string key(SlotKindName(kind));
  if (index != 1) key += "#" + std::to_string(index);
  return key;
}

std::vector<TemplatePiece> ParseTemplateText(std::string_view text) {
  std::vector<TemplatePiece> pieces;
  std::string literal;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '}') ThrowParse("unmatched '}' in template '" + std::string(text) + "'");
    if (c != '{') {
      literal.push_back(c);
      ++i;
      continue;
    }
    const std::size_t close = text.find('}', i);
    if (close == std::string_view::npos) {
      ThrowParse("unterminated slot marker in template '" + std::string(text) + "'");
    }
    if (!literal.empty()) pieces.emplace_back(std::move(literal));
    literal.clear();
    std::string_view body = text.substr(i + 1, close - i - 1);
    i = close + 1;
    if (body == "JoinOn") {
      pieces.emplace_back(JoinOnMarker{});
      continue;
    }
    SlotMarker marker = ParseMarker(body, text);
    if (text.substr(i, 3) == "(s)") {
      marker.plural = true;
      i += 3;
    }
    pieces.emplace_back(std::move(marker));
  }
  if (!literal.empty()) pieces.emplace_back(std::move(literal));
  return pieces;
}

std::string_view CategoryName(ParaphraseCategory category) {
  switch (category) {
    case ParaphraseCategory::kBase: return "base";
    case ParaphraseCategory::kSyntactic: return "syntactic";
    case ParaphraseCategory::kLexical: return "lexical";
    case ParaphraseCategory::kMorphological: return "morphological";
  }
  return "base";
}

std::optional<ParaphraseCategory> ParseCategory(std::string_view name) {
  for (auto c : {ParaphraseCategory::kBase, ParaphraseCategory::kSyntactic,
                 ParaphraseCategory::kLexical, ParaphraseCategory::kMorphological}) {
    if (CategoryName(c) == name) return c;
  }
  return std::nullopt;
}

std::string_view QueryClassName(QueryClass query_class) {
  switch (query_class) {
    case QueryClass::kSelectFilter: return "select-filter";
    case QueryClass::kAggregate: return "aggregate";
    case QueryClass::kGroupAggregate: return "group-aggregate";
    case QueryClass::kSimpleNested: return "simple-nested";
  }
  return "select-filter";
}

std::optional<QueryClass> ParseQueryClass(std::string_view name) {
  for (auto c : {QueryClass::kSelectFilter, QueryClass::kAggregate,
                 QueryClass::kGroupAggregate, QueryClass::kSimpleNested}) {
    if (QueryClassName(c) == name) return c;
  }
  return std::nullopt;
}

bool TemplatePair::uses_join() const {
  return std::any_of(sql_pieces.begin(), sql_pieces.end(), [](const TemplatePiece& p) {
    return std::holds_alternative<JoinOnMarker>(p);
  });
}

SlotId TemplatePair::OwnerOf(const SlotId& slot) const {
  auto it = owners.find(slot);
  return it == owners.end() ? SlotId{SlotKind::kTable, 1} : it->second;
}

const TemplateSlot* TemplatePair::FindSlot(const SlotId& id) const {
  for (const TemplateSlot& s : database_slots) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

std::vector<SlotMarker> TemplatePair::SpeechSlots(std::size_t nl_variant) const {
  std::vector<SlotMarker> out;
  for (const TemplatePiece& p : nl_templates.at(nl_variant).pieces) {
    const SlotMarker* m = std::get_if<SlotMarker>(&p);
    if (m == nullptr || IsDatabaseObjectKind(m->id.kind)) continue;
    const bool seen = std::any_of(out.begin(), out.end(), [&](const SlotMarker& o) {
      return o.id == m->id;
    });
    if (!seen) out.push_back(*m);
  }
  return out;
}

TemplateCatalog LoadTemplates(std::string_view document, const Schema& schema) {
  if (Trim(document).empty()) ThrowParse("templates: empty document");
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    ThrowParse(std::string("templates: ") + e.what());
  }
  if (!doc.is_object()) ThrowParse("templates: top level must be an object");
  if (doc.value("format_version", 0) != kTemplateFormatVersion) {
    ThrowParse("templates: unsupported or missing format_version");
  }
  TemplateCatalog catalog;
  catalog.version = doc.value("catalog_version", std::string("unversioned"));
  if (!doc.contains("templates") || !doc["templates"].is_array()) {
    ThrowParse("templates: missing 'templates' list");
  }
  std::set<std::string> ids;
  for (const json& tj : doc["templates"]) {
    TemplatePair t = ParseTemplate(tj, schema);
    if (!ids.insert(t.id).second) ThrowValidation("duplicate template id '" + t.id + "'");
    catalog.templates.push_back(std::move(t));
  }
  return catalog;
}

TemplateCatalog LoadTemplatesFile(const std::string& path, const Schema& schema) {
  return LoadTemplates(ReadFile(path), schema);
}

PhraseLexicon::PhraseLexicon() {
  comparators_["="] = {"is", ""};
  comparators_["<"] = {"", "less than"};
  comparators_[">"] = {"", "greater than"};
  comparators_["<="] = {"", "at most"};
  comparators_[">="] = {"", "at least"};
}

const std::vector<std::string>* PhraseLexicon::Find(std::string_view key) const {
  auto it = phrases_.find(std::string(key));
  return it == phrases_.end() ? nullptr : &it->second;
}

const std::string& PhraseLexicon::ComparatorWords(std::string_view comparator,
                                                  DataKind kind) const {
  auto it = comparators_.find(std::string(comparator));
  if (it == comparators_.end()) {
    ThrowValidation("unknown comparator '" + std::string(comparator) + "'");
  }
  return IsNumeric(kind) ? it->second.numeric : it->second.text;
}

std::set<std::string> PhraseLexicon::ComparatorVocabulary() const {
  std::set<std::string> words;
  for (const auto& [op, phrase] : comparators_) {
    for (const std::string* s : {&phrase.text, &phrase.numeric}) {
      for (const Token& t : Tokenize(*s)) words.insert(ToLower(t.text));
    }
  }
  return words;
}

void PhraseLexicon::Add(const std::string& key, std::vector<std::string> phrases) {
  if (phrases.empty()) ThrowValidation("lexicon: empty phrase list for " + key);
  std::set<std::string> seen;
  for (const std::string& p : phrases) {
    if (p.empty()) ThrowValidation("lexicon: empty phrase for " + key);
    if (!seen.insert(p).second) {
      ThrowValidation("lexicon: duplicate phrase '" + p + "' for " + key);
    }
  }
  phrases_[key] = std::move(phrases);
}

void PhraseLexicon::SetComparator(const std::string& comparator, ComparatorPhrase phrase) {
  if (!IsKnownComparator(comparator)) {
    ThrowValidation("lexicon: unknown comparator '" + comparator + "'");
  }
  comparators_[comparator] = std::move(phrase);
}

std::string SpeechKey(const SlotMarker& marker) {
  std::string key(SlotKindName(marker.id.kind));
  if (!marker.qualifier.empty()) key += ":" + marker.qualifier;
  return key;
}

PhraseLexicon LoadPhraseLexicon(std::string_view document) {
  PhraseLexicon lexicon;
  if (Trim(document).empty()) return lexicon;
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    ThrowParse(std::string("lexicon: ") + e.what());
  }
  if (!doc.is_object()) ThrowParse("lexicon: top level must be an object");
  if (doc.value("format_version", 0) != kLexiconFormatVersion) {
    ThrowParse("lexicon: unsupported or missing format_version");
  }
  if (auto it = doc.find("phrases"); it != doc.end()) {
    for (const auto& [key, list] : it->items()) {
      const std::string kind_name = key.substr(0, key.find(':'));
      auto kind = ParseSlotKind(kind_name);
      if (!kind || IsDatabaseObjectKind(*kind)) {
        ThrowValidation("lexicon: '" + key + "' is not a speech slot kind");
      }
      std::vector<std::string> phrases;
      for (const json& p : list) phrases.push_back(NormalizePhrase(p.get<std::string>()));
      lexicon.Add(key, std::move(phrases));
    }
  }
  if (auto it = doc.find("comparators"); it != doc.end()) {
    for (const auto& [op, value] : it->items()) {
      ComparatorPhrase phrase;
      phrase.text = NormalizePhrase(value.value("text", std::string()));
      phrase.numeric = NormalizePhrase(value.value("numeric", std::string()));
      lexicon.SetComparator(op, std::move(phrase));
    }
  }
  return lexicon;
}

void CheckLexiconCovers(const PhraseLexicon& lexicon, const TemplateCatalog& catalog) {
  for (const TemplatePair& t : catalog.templates) {
    for (std::size_t v = 0; v < t.nl_templates.size(); ++v) {
      for (const SlotMarker& m : t.SpeechSlots(v)) {
        if (lexicon.Find(SpeechKey(m)) == nullptr) {
          ThrowValidation("lexicon: missing slot kind " + SpeechKey(m) +
                          " required by template '" + t.id + "'");
        }
      }
    }
  }
}

PhraseLexicon LoadPhraseLexicon(std::string_view document, const TemplateCatalog& catalog) {
  PhraseLexicon lexicon = LoadPhraseLexicon(document);
  CheckLexiconCovers(lexicon, catalog);
  return lexicon;
}

PhraseLexicon LoadPhraseLexiconFile(const std::string& path) {
  return LoadPhraseLexicon(ReadFile(path));
}

}  // namespace nlsql
