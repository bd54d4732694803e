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

#ifndef NLSQL_DATABASE_H_
#define NLSQL_DATABASE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nlsql/schema.h"

struct sqlite3;

namespace nlsql {

using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

inline constexpr double kCellRelativeTolerance = 1e-9;

bool CellsEqual(const Cell& a, const Cell& b);
// Total order: NULL < numbers < text; numbers compared by value.
bool CellLess(const Cell& a, const Cell& b);
std::string CellToString(const Cell& cell);

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// True iff some injective gold->predicted column mapping makes the projected
// predicted rows equal the gold rows as multisets.
bool ResultsMatch(const ResultTable& predicted, const ResultTable& gold);

class Database {
 public:
  static Database InMemory();
  // "*.sql" files are executed into a fresh in-memory database; anything else
  // is opened read-only as an SQLite file.
  static Database Open(const std::string& path);

  Database(Database&& other) noexcept;
  Database& operator=(Database&& other) noexcept;
  Database(const Database&) = delete;
  Database& operator=(const Database&) = delete;
  ~Database();

  void Exec(std::string_view script);
  // Throws kRuntime carrying the engine message.
  ResultTable Query(std::string_view sql) const;

 private:
  explicit Database(sqlite3* handle) : db_(handle) {}
  sqlite3* db_ = nullptr;
};

// CREATE TABLE statements for every schema table.
std::string SchemaDdl(const Schema& schema);

// Schema tables filled with rows zipped from the value samples.
Database CreateDatabaseFromSchema(const Schema& schema, const ValueIndex& values);

}  // namespace nlsql

#endif  // NLSQL_DATABASE_H_
