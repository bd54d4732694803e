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

#ifndef NLSQL_SCHEMA_H_
#define NLSQL_SCHEMA_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nlsql {

inline constexpr int kSchemaFormatVersion = 1;
inline constexpr int kValueFormatVersion = 1;

enum class DataKind { kText, kInteger, kReal, kDate };

std::string_view DataKindName(DataKind kind);
std::optional<DataKind> ParseDataKind(std::string_view name);
inline bool IsNumeric(DataKind kind) {
  return kind == DataKind::kInteger || kind == DataKind::kReal;
}

struct Column {
  std::string name;
  DataKind data_kind = DataKind::kText;
  std::vector<std::string> synonyms;  // never empty after loading
  bool is_filterable = true;

  bool operator==(const Column&) const = default;
};

struct ForeignKey {
  std::string column;
  std::string ref_table;
  std::string ref_column;

  bool operator==(const ForeignKey&) const = default;
};

struct Table {
  std::string name;
  std::vector<Column> columns;
  std::vector<ForeignKey> foreign_keys;

  const Column* FindColumn(std::string_view column) const;
  // NL surface form of the table name ("lab_results" -> "lab results").
  std::string SurfaceForm() const;

  bool operator==(const Table&) const = default;
};

struct ColumnRef {
  std::string table;
  std::string column;

  auto operator<=>(const ColumnRef&) const = default;
};

class Schema {
 public:
  Schema() = default;
  Schema(std::string name, std::vector<Table> tables);

  const std::string& name() const { return name_; }
  const std::vector<Table>& tables() const { return tables_; }

  const Table* FindTable(std::string_view table) const;
  const Column* FindColumn(std::string_view table,
                           std::string_view column) const;
  const Column& GetColumn(const ColumnRef& ref) const;

  // Number of tables declaring a column with this name.
  std::size_t ColumnNameCount(std::string_view column) const;

  // Throws ErrorKind::kValidation naming the offending element.
  void Validate() const;

  bool operator==(const Schema&) const = default;

 private:
  std::string name_;
  std::vector<Table> tables_;
};

// Parses and validates a schema document:
//   {"format_version": 1, "name": "...", "tables": [
//     {"name": "...", "columns": [{"name", "type", "synonyms", "filterable"}],
//      "foreign_keys": [{"column", "ref_table", "ref_column"}]}]}
Schema LoadSchema(std::string_view document);
Schema LoadSchemaFile(const std::string& path);

struct ValueRecord {
  std::string table;
  std::string column;
  std::string value;
};

// Value file: JSON lines. The first record is {"format_version": 1}; every
// following line is {"table": ..., "column": ..., "value": ...}.
std::vector<ValueRecord> ParseValueFile(std::string_view document);
std::vector<ValueRecord> LoadValueFile(const std::string& path);

struct ValueBinding {
  std::string table;
  std::string column;
  std::string canonical;

  bool operator==(const ValueBinding&) const = default;
};

class ValueIndex {
 public:
  ValueIndex() = default;

  // Bindings for the normalized form of `surface`; empty if none.
  const std::vector<ValueBinding>& Lookup(std::string_view surface) const;
  // Sample values in insertion order, duplicates removed.
  const std::vector<std::string>& Samples(const ColumnRef& column) const;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  // Longest entry measured in tokens; bounds the anonymizer's n-gram scan.
  std::size_t max_tokens() const { return max_tokens_; }

  const std::map<std::string, std::vector<ValueBinding>>& entries() const {
    return entries_;
  }
  const std::map<ColumnRef, std::vector<std::string>>& samples() const {
    return samples_;
  }

 private:
  friend ValueIndex BuildValueIndex(const Schema&,
                                    const std::vector<ValueRecord>&);

  std::map<std::string, std::vector<ValueBinding>> entries_;
  std::map<ColumnRef, std::vector<std::string>> samples_;
  std::size_t max_tokens_ = 0;
};

// Throws kValidation on unknown columns or values incompatible with the
// column's data kind.
ValueIndex BuildValueIndex(const Schema& schema,
                           const std::vector<ValueRecord>& values);

bool ValueFitsKind(std::string_view value, DataKind kind);

// SQL literal for a constant of the given kind: text and dates are quoted
// with '' escaping, numerics are emitted bare.
std::string SqlLiteral(std::string_view value, DataKind kind);

std::string ReadFile(const std::string& path);

}  // namespace nlsql

#endif  // NLSQL_SCHEMA_H_
