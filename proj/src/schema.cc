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

#include "nlsql/schema.h"

#include <fstream>
#include <set>
#include <sstream>

#include "nlohmann/json.hpp"
#include "nlsql/error.h"
#include "nlsql/text.h"

namespace nlsql {
namespace {

using nlohmann::json;

bool IsIdentifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
    return false;
  }
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

const json& Require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) ThrowParse(where + ": missing field '" + key + "'");
  return *it;
}

std::string RequireString(const json& obj, const char* key,
                          const std::string& where) {
  const json& v = Require(obj, key, where);
  if (!v.is_string()) ThrowParse(where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

void CheckFormatVersion(const json& doc, int expected, const std::string& what) {
  auto it = doc.find("format_version");
  if (it == doc.end()) ThrowParse(what + ": missing format_version");
  if (!it->is_number_integer() || it->get<int>() != expected) {
    ThrowParse(what + ": unsupported format_version " + it->dump());
  }
}

Column ParseColumn(const json& j, const std::string& where) {
  if (!j.is_object()) ThrowParse(where + ": column must be an object");
  Column col;
  col.name = RequireString(j, "name", where);
  const std::string type = RequireString(j, "type", where + "." + col.name);
  auto kind = ParseDataKind(type);
  if (!kind) {
    ThrowParse(where + "." + col.name + ": unknown type '" + type + "'");
  }
  col.data_kind = *kind;
  if (auto it = j.find("synonyms"); it != j.end()) {
    if (!it->is_array()) ThrowParse(where + "." + col.name + ": synonyms must be a list");
    for (const json& s : *it) {
      if (!s.is_string()) ThrowParse(where + "." + col.name + ": synonym must be a string");
      std::string syn = NormalizePhrase(s.get<std::string>());
      if (!syn.empty()) col.synonyms.push_back(std::move(syn));
    }
  }
  if (col.synonyms.empty()) col.synonyms.push_back(IdentifierToWords(col.name));
  if (auto it = j.find("filterable"); it != j.end()) {
    if (!it->is_boolean()) ThrowParse(where + "." + col.name + ": filterable must be a boolean");
    col.is_filterable = it->get<bool>();
  }
  return col;
}

}  // namespace

std::string_view DataKindName(DataKind kind) {
  switch (kind) {
    case DataKind::kText: return "text";
    case DataKind::kInteger: return "integer";
    case DataKind::kReal: return "real";
    case DataKind::kDate: return "date";
  }
  return "text";
}

std::optional<DataKind> ParseDataKind(std::string_view name) {
  const std::string n = Normalize(name);
  if (n == "text") return DataKind::kText;
  if (n == "integer") return DataKind::kInteger;
  if (n == "real") return DataKind::kReal;
  if (n == "date") return DataKind::kDate;
  return std::nullopt;
}

const Column* Table::FindColumn(std::string_view column) const {
  for (const Column& c : columns) {
    if (c.name == column) return &c;
  }
  return nullptr;
}

std::string Table::SurfaceForm() const { return IdentifierToWords(name); }

Schema::Schema(std::string name, std::vector<Table> tables)
    : name_(std::move(name)), tables_(std::move(tables)) {}

const Table* Schema::FindTable(std::string_view table) const {
  for (const Table& t : tables_) {
    if (t.name == table) return &t;
  }
  return nullptr;
}

const Column* Schema::FindColumn(std::string_view table,
                                 std::string_view column) const {
  const Table* t = FindTable(table);
  return t == nullptr ? nullptr : t->FindColumn(column);
}

const Column& Schema::GetColumn(const ColumnRef& ref) const {
  const Column* c = FindColumn(ref.table, ref.column);
  if (c == nullptr) {
    ThrowValidation("unknown column " + ref.table + "." + ref.column);
  }
  return *c;
}

std::size_t Schema::ColumnNameCount(std::string_view column) const {
  std::size_t n = 0;
  for (const Table& t : tables_) {
    if (t.FindColumn(column) != nullptr) ++n;
  }
  return n;
}

void Schema::Validate() const {
  if (!IsIdentifier(name_)) ThrowValidation("schema name '" + name_ + "' is not an identifier");
  if (tables_.empty()) ThrowValidation("schema '" + name_ + "' has no tables");
  std::set<std::string> table_names;
  for (const Table& t : tables_) {
    if (!IsIdentifier(t.name)) ThrowValidation("table name '" + t.name + "' is not an identifier");
    if (!table_names.insert(t.name).second) ThrowValidation("duplicate table '" + t.name + "'");
    if (t.columns.empty()) ThrowValidation("table '" + t.name + "' has no columns");
    std::set<std::string> column_names;
    for (const Column& c : t.columns) {
      if (!IsIdentifier(c.name)) {
        ThrowValidation("column name '" + t.name + "." + c.name + "' is not an identifier");
      }
      if (!column_names.insert(c.name).second) {
        ThrowValidation("duplicate column '" + t.name + "." + c.name + "'");
      }
      if (c.synonyms.empty()) ThrowValidation("column '" + t.name + "." + c.name + "' has no synonyms");
    }
  }
  for (const Table& t : tables_) {
    for (const ForeignKey& fk : t.foreign_keys) {
      const std::string what = "foreign key " + t.name + "." + fk.column + " -> " +
                               fk.ref_table + "." + fk.ref_column;
      const Column* local = t.FindColumn(fk.column);
      if (local == nullptr) ThrowValidation(what + ": unknown local column");
      const Column* remote = FindColumn(fk.ref_table, fk.ref_column);
      if (remote == nullptr) ThrowValidation(what + ": dangling reference");
      const bool compatible =
          local->data_kind == remote->data_kind ||
          (IsNumeric(local->data_kind) && IsNumeric(remote->data_kind));
      if (!compatible) ThrowValidation(what + ": incompatible types");
    }
  }
}

Schema LoadSchema(std::string_view document) {
  if (Trim(document).empty()) ThrowParse("schema: empty document");
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    ThrowParse(std::string("schema: ") + e.what());
  }
  if (!doc.is_object()) ThrowParse("schema: top level must be an object");
  CheckFormatVersion(doc, kSchemaFormatVersion, "schema");
  std::string name = RequireString(doc, "name", "schema");
  const json& tables_json = Require(doc, "tables", "schema");
  if (!tables_json.is_array()) ThrowParse("schema: 'tables' must be a list");
  std::vector<Table> tables;
  for (const json& tj : tables_json) {
    if (!tj.is_object()) ThrowParse("schema: table must be an object");
    Table t;
    t.name = RequireString(tj, "name", "table");
    const json& cols = Require(tj, "columns", "table " + t.name);
    if (!cols.is_array()) ThrowParse("table " + t.name + ": 'columns' must be a list");
    for (const json& cj : cols) t.columns.push_back(ParseColumn(cj, "table " + t.name));
    if (auto it = tj.find("foreign_keys"); it != tj.end()) {
      if (!it->is_array()) ThrowParse("table " + t.name + ": 'foreign_keys' must be a list");
      for (const json& fj : *it) {
        const std::string where = "table " + t.name + " foreign key";
        t.foreign_keys.push_back({RequireString(fj, "column", where),
                                  RequireString(fj, "ref_table", where),
                                  RequireString(fj, "ref_column", where)});
      }
    }
    tables.push_back(std::move(t));
  }
  Schema schema(std::move(name), std::move(tables));
  schema.Validate();
  return schema;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) ThrowIo("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Schema LoadSchemaFile(const std::string& path) { return LoadSchema(ReadFile(path)); }

std::vector<ValueRecord> ParseValueFile(std::string_view document) {
  std::vector<ValueRecord> records;
  bool saw_header = false;
  std::size_t line_no = 0;
  for (const std::string& line : SplitLines(document)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      ThrowParse("values line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!saw_header) {
      if (!j.is_object() || !j.contains("format_version")) {
        ThrowParse("values line " + std::to_string(line_no) + ": expected format_version header");
      }
      CheckFormatVersion(j, kValueFormatVersion, "values");
      saw_header = true;
      continue;
    }
    const std::string where = "values line " + std::to_string(line_no);
    if (!j.is_object()) ThrowParse(where + ": record must be an object");
    ValueRecord r;
    r.table = RequireString(j, "table", where);
    r.column = RequireString(j, "column", where);
    const json& v = Require(j, "value", where);
    if (v.is_string()) {
      r.value = v.get<std::string>();
    } else if (v.is_number()) {
      r.value = v.dump();
    } else {
      ThrowParse(where + ": value must be a string or number");
    }
    records.push_back(std::move(r));
  }
  if (!saw_header && !records.empty()) ThrowParse("values: missing format_version header");
  return records;
}

std::vector<ValueRecord> LoadValueFile(const std::string& path) {
  return ParseValueFile(ReadFile(path));
}

bool ValueFitsKind(std::string_view value, DataKind kind) {
  switch (kind) {
    case DataKind::kText: return true;
    case DataKind::kInteger: return IsIntegerLiteral(value);
    case DataKind::kReal: return IsNumericLiteral(value);
    case DataKind::kDate: return IsDateLiteral(value);
  }
  return false;
}

std::string SqlLiteral(std::string_view value, DataKind kind) {
  if (IsNumeric(kind)) return std::string(value);
  std::string out = "'";
  for (char c : value) {
    if (c == '\'') out.push_back('\'');
    out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

const std::vector<ValueBinding>& ValueIndex::Lookup(std::string_view surface) const {
  static const std::vector<ValueBinding> kEmpty;
  auto it = entries_.find(Normalize(surface));
  return it == entries_.end() ? kEmpty : it->second;
}

const std::vector<std::string>& ValueIndex::Samples(const ColumnRef& column) const {
  static const std::vector<std::string> kEmpty;
  auto it = samples_.find(column);
  return it == samples_.end() ? kEmpty : it->second;
}

ValueIndex BuildValueIndex(const Schema& schema,
                           const std::vector<ValueRecord>& values) {
  ValueIndex index;
  for (const ValueRecord& r : values) {
    const Column* col = schema.FindColumn(r.table, r.column);
    if (col == nullptr) {
      ThrowValidation("value for unknown column " + r.table + "." + r.column);
    }
    const std::string canonical = Trim(r.value);
    if (canonical.empty()) {
      ThrowValidation("empty value for " + r.table + "." + r.column);
    }
    if (!ValueFitsKind(canonical, col->data_kind)) {
      ThrowValidation("value '" + r.value + "' is not a valid " +
                      std::string(DataKindName(col->data_kind)) + " for " +
                      r.table + "." + r.column);
    }
    std::vector<std::string>& samples = index.samples_[{r.table, r.column}];
    if (std::find(samples.begin(), samples.end(), canonical) != samples.end()) {
      continue;
    }
    samples.push_back(canonical);
    std::vector<ValueBinding>& bindings = index.entries_[Normalize(canonical)];
    ValueBinding b{r.table, r.column, canonical};
    if (std::find(bindings.begin(), bindings.end(), b) == bindings.end()) {
      bindings.push_back(std::move(b));
    }
    index.max_tokens_ = std::max(index.max_tokens_, Tokenize(canonical).size());
  }
  return index;
}

}  // namespace nlsql
