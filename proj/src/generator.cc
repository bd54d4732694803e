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

#include "nlsql/generator.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <unordered_set>
#include <variant>

#include "nlsql/error.h"
#include "nlsql/parallel.h"
#include "nlsql/placeholder.h"
#include "nlsql/rng.h"
#include "nlsql/text.h"

namespace nlsql {
namespace {

using Choice = std::variant<std::vector<ColumnChoice>, FilterChoice, std::string>;

bool MatchesQualifier(const Column& column, const std::string& qualifier) {
  if (qualifier.empty()) return true;
  if (qualifier == "numeric") return IsNumeric(column.data_kind);
  if (qualifier == "text") return column.data_kind == DataKind::kText;
  return false;
}

bool LinkedByForeignKey(const Schema& schema, const std::string& a, const std::string& b) {
  for (const std::string* from : {&a, &b}) {
    const std::string& to = from == &a ? b : a;
    const Table* t = schema.FindTable(*from);
    for (const ForeignKey& fk : t->foreign_keys) {
      if (fk.ref_table == to) return true;
    }
  }
  return false;
}

std::string JoinOnClause(const Schema& schema, const std::string& a, const std::string& b) {
  for (const ForeignKey& fk : schema.FindTable(a)->foreign_keys) {
    if (fk.ref_table == b) return a + "." + fk.column + " = " + b + "." + fk.ref_column;
  }
  for (const ForeignKey& fk : schema.FindTable(b)->foreign_keys) {
    if (fk.ref_table == a) return a + "." + fk.ref_column + " = " + b + "." + fk.column;
  }
  ThrowRuntime("no foreign key links " + a + " and " + b);
}

// Cartesian product of per-column synonym choices for a fixed column tuple.
void ExpandSynonyms(const Table& table, const std::vector<const Column*>& columns,
                    std::size_t pos, std::vector<ColumnChoice>& current,
                    std::vector<Choice>& out) {
  if (pos == columns.size()) {
    out.emplace_back(current);
    return;
  }
  for (const std::string& syn : columns[pos]->synonyms) {
    current.push_back({{table.name, columns[pos]->name}, syn});
    ExpandSynonyms(table, columns, pos + 1, current, out);
    current.pop_back();
  }
}

std::vector<Choice> AttributeChoices(const Table& table, const TemplateSlot& slot) {
  std::vector<const Column*> eligible;
  for (const Column& c : table.columns) {
    if (MatchesQualifier(c, slot.qualifier)) eligible.push_back(&c);
  }
  std::vector<Choice> out;
  const std::size_t max_size = std::min<std::size_t>(slot.arity.max, eligible.size());
  for (std::size_t size = static_cast<std::size_t>(slot.arity.min); size <= max_size; ++size) {
    // Lexicographic combinations of `size` eligible columns.
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      std::vector<const Column*> cols;
      for (std::size_t i : idx) cols.push_back(eligible[i]);
      std::vector<ColumnChoice> current;
      ExpandSynonyms(table, cols, 0, current, out);
      std::size_t k = size;
      while (k > 0 && idx[k - 1] == eligible.size() - size + (k - 1)) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

std::vector<Choice> FilterChoices(const Table& table, const TemplateSlot& slot,
                                  const TemplatePair& tmpl, const ValueIndex& values,
                                  bool anonymize, std::set<std::string>& diagnostics) {
  std::vector<Choice> out;
  for (const Column& c : table.columns) {
    if (!c.is_filterable || !MatchesQualifier(c, slot.qualifier)) continue;
    const std::vector<std::string>& samples = values.Samples({table.name, c.name});
    if (!anonymize && samples.empty()) {
      diagnostics.insert("template '" + tmpl.id + "': " + table.name + "." + c.name +
                         " has no sample values for concrete filters");
      continue;
    }
    for (const std::string& op : tmpl.comparators) {
      if (op != "=" && !IsNumeric(c.data_kind)) continue;
      for (const std::string& syn : c.synonyms) {
        ColumnChoice column{{table.name, c.name}, syn};
        if (anonymize) {
          out.emplace_back(FilterChoice{column, op, std::nullopt});
        } else {
          for (const std::string& v : samples) out.emplace_back(FilterChoice{column, op, v});
        }
      }
    }
  }
  return out;
}

void EnumerateTables(const TemplatePair& tmpl, const Schema& schema,
                     const std::vector<SlotId>& table_slots, std::size_t pos,
                     std::map<SlotId, std::string>& current,
                     std::vector<std::map<SlotId, std::string>>& out) {
  if (pos == table_slots.size()) {
    if (tmpl.uses_join()) {
      const std::string& a = current.at({SlotKind::kTable, 1});
      const std::string& b = current.at({SlotKind::kTable, 2});
      if (!LinkedByForeignKey(schema, a, b)) return;
    }
    out.push_back(current);
    return;
  }
  for (const Table& t : schema.tables()) {
    const bool taken = std::any_of(current.begin(), current.end(),
                                   [&](const auto& kv) { return kv.second == t.name; });
    if (taken) continue;
    current[table_slots[pos]] = t.name;
    EnumerateTables(tmpl, schema, table_slots, pos + 1, current, out);
    current.erase(table_slots[pos]);
  }
}

std::string ListJoin(const std::vector<std::string>& items) {
  if (items.size() <= 1) return items.empty() ? std::string() : items[0];
  std::string out;
  for (std::size_t i = 0; i + 1 < items.size(); ++i) {
    if (i > 0) out += ", ";
    out += items[i];
  }
  return out + " and " + items.back();
}

std::string Hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

void GenerationConfig::Validate() const {
  if (per_template_cap < 1) ThrowValidation("generation: per_template_cap must be >= 1");
  if (!(balance_ratio_max >= 1.0)) ThrowValidation("generation: balance_ratio_max must be >= 1");
}

FillingStream EnumerateSlotFillings(const TemplatePair& tmpl, const Schema& schema,
                                    const PhraseLexicon& lexicon,
                                    const ValueIndex& value_index, bool anonymize_values) {
  FillingStream stream;
  std::set<std::string> diagnostics;

  std::vector<SlotId> table_slots;
  std::vector<const TemplateSlot*> other_slots;
  for (const TemplateSlot& s : tmpl.database_slots) {
    if (s.id.kind == SlotKind::kTable) {
      table_slots.push_back(s.id);
    } else {
      other_slots.push_back(&s);
    }
  }
  std::vector<std::map<SlotId, std::string>> table_assignments;
  std::map<SlotId, std::string> current;
  EnumerateTables(tmpl, schema, table_slots, 0, current, table_assignments);
  if (table_assignments.empty()) {
    diagnostics.insert("template '" + tmpl.id + "': no admissible table assignment" +
                       (tmpl.uses_join() ? " (needs a foreign key)" : ""));
  }

  for (std::size_t v = 0; v < tmpl.nl_templates.size(); ++v) {
    const std::vector<SlotMarker> speech = tmpl.SpeechSlots(v);
    std::vector<std::vector<Choice>> speech_choices;
    bool speech_ok = true;
    for (const SlotMarker& m : speech) {
      const std::vector<std::string>* phrases = lexicon.Find(SpeechKey(m));
      if (phrases == nullptr) {
        diagnostics.insert("template '" + tmpl.id + "': lexicon lacks " + SpeechKey(m));
        speech_ok = false;
        break;
      }
      speech_choices.emplace_back(phrases->begin(), phrases->end());
    }
    if (!speech_ok) continue;

    for (const auto& tables : table_assignments) {
      std::vector<std::vector<Choice>> choices;
      bool empty = false;
      for (const TemplateSlot* slot : other_slots) {
        const Table& owner = *schema.FindTable(tables.at(tmpl.OwnerOf(slot->id)));
        std::vector<Choice> c;
        if (slot->id.kind == SlotKind::kAttribute) {
          c = AttributeChoices(owner, *slot);
        } else {
          c = FilterChoices(owner, *slot, tmpl, value_index, anonymize_values, diagnostics);
        }
        if (c.empty()) {
          diagnostics.insert("template '" + tmpl.id + "': no admissible column for {" +
                             slot->id.Key() + "} in table " + owner.name +
                             (slot->id.kind == SlotKind::kFilter ? " (no filterable column)" : ""));
          empty = true;
          break;
        }
        choices.push_back(std::move(c));
      }
      if (empty) continue;
      for (auto& sc : speech_choices) choices.push_back(sc);

      // Odometer with the first slot outermost.
      std::vector<std::size_t> idx(choices.size(), 0);
      while (true) {
        Instantiation inst;
        inst.nl_variant = v;
        inst.filling.tables = tables;
        for (std::size_t i = 0; i < other_slots.size(); ++i) {
          const Choice& ch = choices[i][idx[i]];
          if (const auto* attrs = std::get_if<std::vector<ColumnChoice>>(&ch)) {
            inst.filling.attributes[other_slots[i]->id] = *attrs;
          } else {
            inst.filling.filters[other_slots[i]->id] = std::get<FilterChoice>(ch);
          }
        }
        for (std::size_t i = 0; i < speech.size(); ++i) {
          const std::size_t c = other_slots.size() + i;
          inst.filling.phrases[speech[i].id] = std::get<std::string>(choices[c][idx[c]]);
        }
        stream.items.push_back(std::move(inst));
        std::size_t k = choices.size();
        while (k > 0) {
          if (++idx[k - 1] < choices[k - 1].size()) break;
          idx[k - 1] = 0;
          --k;
        }
        if (k == 0) break;
      }
    }
  }
  stream.diagnostics.assign(diagnostics.begin(), diagnostics.end());
  return stream;
}

TrainingPair InstantiatePair(const TemplatePair& tmpl, std::size_t nl_variant,
                             const SlotFilling& filling, const Schema& schema,
                             const PhraseLexicon& lexicon, std::uint64_t seed_lineage) {
  const bool qualify = tmpl.uses_join();

  // Placeholder names, numbered in NL reading order.
  std::vector<SlotId> filter_order;
  for (const TemplatePiece& piece : tmpl.nl_templates.at(nl_variant).pieces) {
    const auto* m = std::get_if<SlotMarker>(&piece);
    if (m != nullptr && m->id.kind == SlotKind::kFilter &&
        std::find(filter_order.begin(), filter_order.end(), m->id) == filter_order.end()) {
      filter_order.push_back(m->id);
    }
  }
  std::vector<SlotId> placeholder_slots;
  std::vector<std::string> bases;
  for (const SlotId& id : filter_order) {
    const FilterChoice& f = filling.filters.at(id);
    if (f.value) continue;
    placeholder_slots.push_back(id);
    bases.push_back(PlaceholderBase(schema, f.column.column));
  }
  const std::vector<std::string> names = AssignOrdinals(bases);
  std::map<SlotId, std::string> placeholder;
  for (std::size_t i = 0; i < names.size(); ++i) placeholder[placeholder_slots[i]] = names[i];

  auto sql_column = [&](const ColumnRef& ref) {
    return qualify ? ref.table + "." + ref.column : ref.column;
  };

  std::string nl;
  for (const TemplatePiece& piece : tmpl.nl_templates.at(nl_variant).pieces) {
    if (const auto* literal = std::get_if<std::string>(&piece)) {
      nl += *literal;
      continue;
    }
    const SlotMarker& m = std::get<SlotMarker>(piece);
    switch (m.id.kind) {
      case SlotKind::kTable: {
        const std::string surface = schema.FindTable(filling.tables.at(m.id))->SurfaceForm();
        nl += m.plural ? Pluralize(surface) : surface;
        break;
      }
      case SlotKind::kAttribute: {
        std::vector<std::string> surfaces;
        for (const ColumnChoice& c : filling.attributes.at(m.id)) {
          surfaces.push_back(m.plural ? Pluralize(c.surface) : c.surface);
        }
        nl += ListJoin(surfaces);
        break;
      }
      case SlotKind::kFilter: {
        const FilterChoice& f = filling.filters.at(m.id);
        const Column& col = schema.GetColumn(f.column.column);
        nl += f.column.surface + " " + lexicon.ComparatorWords(f.comparator, col.data_kind) +
              " " + (f.value ? *f.value : placeholder.at(m.id));
        break;
      }
      default:
        nl += filling.phrases.at(m.id);
        break;
    }
  }

  std::string sql;
  for (const TemplatePiece& piece : tmpl.sql_pieces) {
    if (const auto* literal = std::get_if<std::string>(&piece)) {
      sql += *literal;
      continue;
    }
    if (std::holds_alternative<JoinOnMarker>(piece)) {
      sql += JoinOnClause(schema, filling.tables.at({SlotKind::kTable, 1}),
                          filling.tables.at({SlotKind::kTable, 2}));
      continue;
    }
    const SlotMarker& m = std::get<SlotMarker>(piece);
    switch (m.id.kind) {
      case SlotKind::kTable:
        sql += filling.tables.at(m.id);
        break;
      case SlotKind::kAttribute: {
        std::vector<std::string> cols;
        for (const ColumnChoice& c : filling.attributes.at(m.id)) cols.push_back(sql_column(c.column));
        sql += JoinStrings(cols, ", ");
        break;
      }
      case SlotKind::kFilter: {
        const FilterChoice& f = filling.filters.at(m.id);
        const Column& col = schema.GetColumn(f.column.column);
        sql += sql_column(f.column.column) + " " + f.comparator + " " +
               (f.value ? SqlLiteral(*f.value, col.data_kind) : placeholder.at(m.id));
        break;
      }
      default:
        ThrowRuntime("speech slot on SQL side of template '" + tmpl.id + "'");
    }
  }

  TrainingPair pair;
  pair.nl = CapitalizeFirst(Detokenize(TokenTexts(Tokenize(CollapseWhitespace(nl)))));
  pair.sql = CollapseWhitespace(sql);
  pair.template_id = tmpl.id;
  pair.category = std::string(CategoryName(tmpl.nl_templates.at(nl_variant).category));
  pair.seed_lineage = "gen:" + Hex64(seed_lineage);
  return pair;
}

std::vector<std::size_t> BalanceCounts(const std::vector<std::size_t>& admissible,
                                       std::size_t cap, double ratio) {
  std::size_t anchor = 0;
  for (std::size_t n : admissible) {
    if (n == 0) continue;
    const std::size_t capped = std::min(n, cap);
    anchor = anchor == 0 ? capped : std::min(anchor, capped);
  }
  std::vector<std::size_t> retained(admissible.size(), 0);
  if (anchor == 0) return retained;
  const auto bound = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(ratio * static_cast<double>(anchor))));
  for (std::size_t i = 0; i < admissible.size(); ++i) {
    retained[i] = std::min({admissible[i], cap, bound});
  }
  return retained;
}

std::uint64_t TemplateStreamId(std::uint64_t seed, const std::string& template_id) {
  return MixStream(seed, Fnv1a(template_id));
}

std::vector<TrainingPair> GenerationResult::Pairs() const {
  std::vector<TrainingPair> out;
  out.reserve(items.size());
  for (const GeneratedPair& g : items) out.push_back(g.pair);
  return out;
}

GenerationResult Generate(const Schema& schema, const TemplateCatalog& catalog,
                          const PhraseLexicon& lexicon, const ValueIndex& value_index,
                          const GenerationConfig& config) {
  config.Validate();
  if (catalog.templates.empty()) ThrowValidation("generate: empty template set");
  if (schema.tables().empty()) ThrowValidation("generate: schema has no tables");

  const std::size_t n = catalog.templates.size();
  std::vector<FillingStream> streams(n);
  ParallelFor(n, config.jobs, [&](std::size_t i) {
    streams[i] = EnumerateSlotFillings(catalog.templates[i], schema, lexicon, value_index,
                                       config.anonymize_values);
  });

  std::vector<std::size_t> admissible(n);
  for (std::size_t i = 0; i < n; ++i) admissible[i] = streams[i].items.size();
  const std::vector<std::size_t> retained =
      BalanceCounts(admissible, config.per_template_cap, config.balance_ratio_max);

  std::vector<std::vector<GeneratedPair>> per_template(n);
  ParallelFor(n, config.jobs, [&](std::size_t i) {
    const TemplatePair& tmpl = catalog.templates[i];
    const std::uint64_t stream_id = TemplateStreamId(config.seed, tmpl.id);
    RngStream rng(stream_id);
    const std::vector<Instantiation>& items = streams[i].items;
    std::size_t needed = retained[i];
    std::size_t remaining = items.size();
    // Selection sampling: uniform k-subset, original order preserved.
    for (const Instantiation& inst : items) {
      if (needed == 0) break;
      if (rng.Below(remaining) < needed) {
        GeneratedPair g;
        g.pair = InstantiatePair(tmpl, inst.nl_variant, inst.filling, schema, lexicon, stream_id);
        g.template_index = i;
        g.instantiation = inst;
        per_template[i].push_back(std::move(g));
        --needed;
      }
      --remaining;
    }
  });

  GenerationResult result;
  std::size_t anchor_bound = 0;
  for (std::size_t r : retained) anchor_bound = std::max(anchor_bound, r);
  result.ratio_bound = anchor_bound;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < n; ++i) {
    TemplateReport report;
    report.template_id = catalog.templates[i].id;
    report.admissible = admissible[i];
    report.retained = per_template[i].size();
    report.kept_whole = admissible[i] > 0 && retained[i] == admissible[i];
    report.diagnostics = streams[i].diagnostics;
    for (GeneratedPair& g : per_template[i]) {
      if (!seen.insert(DedupKey(g.pair)).second) continue;
      result.items.push_back(std::move(g));
      ++report.emitted;
    }
    result.reports.push_back(std::move(report));
  }
  return result;
}

}  // namespace nlsql
