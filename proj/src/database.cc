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

#include "nlsql/database.h"

#include <sqlite3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "nlsql/error.h"

namespace nlsql {
namespace {

bool AsNumber(const Cell& c, double& out) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) {
    out = static_cast<double>(*i);
    return true;
  }
  if (const auto* d = std::get_if<double>(&c)) {
    out = *d;
    return true;
  }
  return false;
}

int Rank(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return 0;
  if (std::holds_alternative<std::string>(c)) return 2;
  return 1;
}

bool RowLess(const std::vector<Cell>& a, const std::vector<Cell>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), CellLess);
}

bool SortedRowsEqual(std::vector<std::vector<Cell>> a, std::vector<std::vector<Cell>> b) {
  if (a.size() != b.size()) return false;
  std::sort(a.begin(), a.end(), RowLess);
  std::sort(b.begin(), b.end(), RowLess);
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t c = 0; c < a[r].size(); ++c) {
      if (!CellsEqual(a[r][c], b[r][c])) return false;
    }
  }
  return true;
}

std::vector<std::vector<Cell>> ColumnAsRows(const ResultTable& t, std::size_t column) {
  std::vector<std::vector<Cell>> out;
  out.reserve(t.rows.size());
  for (const auto& row : t.rows) out.push_back({row[column]});
  return out;
}

std::string SqlTypeName(DataKind kind) {
  switch (kind) {
    case DataKind::kInteger:
      return "INTEGER";
    case DataKind::kReal:
      return "REAL";
    default:
      return "TEXT";
  }
}

}  // namespace

bool CellsEqual(const Cell& a, const Cell& b) {
  double x = 0;
  double y = 0;
  if (AsNumber(a, x) && AsNumber(b, y)) {
    if (x == y) return true;
    return std::fabs(x - y) <= kCellRelativeTolerance * std::max(std::fabs(x), std::fabs(y));
  }
  if (Rank(a) != Rank(b)) return false;
  if (Rank(a) == 0) return true;
  return std::get<std::string>(a) == std::get<std::string>(b);
}

bool CellLess(const Cell& a, const Cell& b) {
  const int ra = Rank(a);
  const int rb = Rank(b);
  if (ra != rb) return ra < rb;
  if (ra == 0) return false;
  if (ra == 2) return std::get<std::string>(a) < std::get<std::string>(b);
  double x = 0;
  double y = 0;
  AsNumber(a, x);
  AsNumber(b, y);
  return x < y;
}

std::string CellToString(const Cell& cell) {
  if (std::holds_alternative<std::monostate>(cell)) return "NULL";
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", *d);
    return buf;
  }
  return std::get<std::string>(cell);
}

bool ResultsMatch(const ResultTable& predicted, const ResultTable& gold) {
  const std::size_t g = gold.columns.size();
  const std::size_t p = predicted.columns.size();
  if (predicted.rows.size() != gold.rows.size() || g > p) return false;

  // Predicted columns whose value multiset equals each gold column's.
  std::vector<std::vector<std::size_t>> candidates(g);
  for (std::size_t j = 0; j < g; ++j) {
    for (std::size_t k = 0; k < p; ++k) {
      if (SortedRowsEqual(ColumnAsRows(gold, j), ColumnAsRows(predicted, k))) {
        candidates[j].push_back(k);
      }
    }
    if (candidates[j].empty()) return false;
  }

  std::vector<std::size_t> mapping(g);
  std::vector<bool> used(p, false);
  std::function<bool(std::size_t)> search = [&](std::size_t j) -> bool {
    if (j == g) {
      std::vector<std::vector<Cell>> projected;
      projected.reserve(predicted.rows.size());
      for (const auto& row : predicted.rows) {
        std::vector<Cell> out;
        out.reserve(g);
        for (std::size_t m : mapping) out.push_back(row[m]);
        projected.push_back(std::move(out));
      }
      return SortedRowsEqual(std::move(projected), gold.rows);
    }
    for (std::size_t k : candidates[j]) {
      if (used[k]) continue;
      used[k] = true;
      mapping[j] = k;
      if (search(j + 1)) return true;
      used[k] = false;
    }
    return false;
  };
  return search(0);
}

Database Database::InMemory() {
  sqlite3* db = nullptr;
  if (sqlite3_open_v2(":memory:", &db, SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE, nullptr) !=
      SQLITE_OK) {
    const std::string msg = db != nullptr ? sqlite3_errmsg(db) : "out of memory";
    sqlite3_close(db);
    ThrowRuntime("sqlite: cannot open in-memory database: " + msg);
  }
  return Database(db);
}

Database Database::Open(const std::string& path) {
  const bool script = path.size() >= 4 && path.compare(path.size() - 4, 4, ".sql") == 0;
  if (script) {
    Database db = InMemory();
    db.Exec(ReadFile(path));
    return db;
  }
  sqlite3* handle = nullptr;
  if (sqlite3_open_v2(path.c_str(), &handle, SQLITE_OPEN_READONLY, nullptr) != SQLITE_OK) {
    const std::string msg = handle != nullptr ? sqlite3_errmsg(handle) : "out of memory";
    sqlite3_close(handle);
    ThrowIo("sqlite: cannot open " + path + ": " + msg);
  }
  return Database(handle);
}

Database::Database(Database&& other) noexcept : db_(other.db_) { other.db_ = nullptr; }

Database& Database::operator=(Database&& other) noexcept {
  if (this != &other) {
    sqlite3_close(db_);
    db_ = other.db_;
    other.db_ = nullptr;
  }
  return *this;
}

Database::~Database() { sqlite3_close(db_); }

void Database::Exec(std::string_view script) {
  char* err = nullptr;
  const std::string text(script);
  if (sqlite3_exec(db_, text.c_str(), nullptr, nullptr, &err) != SQLITE_OK) {
    const std::string msg = err != nullptr ? err : "unknown error";
    sqlite3_free(err);
    ThrowRuntime("sqlite: " + msg);
  }
}

ResultTable Database::Query(std::string_view sql) const {
  sqlite3_stmt* stmt = nullptr;
  const char* tail = nullptr;
  if (sqlite3_prepare_v2(db_, sql.data(), static_cast<int>(sql.size()), &stmt, &tail) !=
      SQLITE_OK) {
    ThrowRuntime(std::string("sqlite: ") + sqlite3_errmsg(db_));
  }
  if (stmt == nullptr) ThrowRuntime("sqlite: empty statement");
  ResultTable table;
  const int n = sqlite3_column_count(stmt);
  for (int c = 0; c < n; ++c) table.columns.emplace_back(sqlite3_column_name(stmt, c));
  while (true) {
    const int rc = sqlite3_step(stmt);
    if (rc == SQLITE_DONE) break;
    if (rc != SQLITE_ROW) {
      const std::string msg = sqlite3_errmsg(db_);
      sqlite3_finalize(stmt);
      ThrowRuntime("sqlite: " + msg);
    }
    std::vector<Cell> row;
    row.reserve(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
      switch (sqlite3_column_type(stmt, c)) {
        case SQLITE_NULL:
          row.emplace_back(std::monostate{});
          break;
        case SQLITE_INTEGER:
          row.emplace_back(static_cast<std::int64_t>(sqlite3_column_int64(stmt, c)));
          break;
        case SQLITE_FLOAT:
          row.emplace_back(sqlite3_column_double(stmt, c));
          break;
        default:
          row.emplace_back(std::string(reinterpret_cast<const char*>(sqlite3_column_text(stmt, c)),
                                       static_cast<std::size_t>(sqlite3_column_bytes(stmt, c))));
      }
    }
    table.rows.push_back(std::move(row));
  }
  sqlite3_finalize(stmt);
  return table;
}

std::string SchemaDdl(const Schema& schema) {
  std::string ddl;
  for (const Table& t : schema.tables()) {
    ddl += "CREATE TABLE " + t.name + " (";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      if (i > 0) ddl += ", ";
      ddl += t.columns[i].name + " " + SqlTypeName(t.columns[i].data_kind);
    }
    ddl += ");\n";
  }
  return ddl;
}

Database CreateDatabaseFromSchema(const Schema& schema, const ValueIndex& values) {
  Database db = Database::InMemory();
  std::string script = "BEGIN;\n" + SchemaDdl(schema);
  for (const Table& t : schema.tables()) {
    std::size_t rows = 0;
    for (const Column& c : t.columns) {
      rows = std::max(rows, values.Samples({t.name, c.name}).size());
    }
    for (std::size_t r = 0; r < rows; ++r) {
      script += "INSERT INTO " + t.name + " VALUES (";
      for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i > 0) script += ", ";
        const Column& c = t.columns[i];
        const auto& samples = values.Samples({t.name, c.name});
        if (!samples.empty()) {
          script += SqlLiteral(samples[r % samples.size()], c.data_kind);
        } else if (c.data_kind == DataKind::kInteger) {
          script += std::to_string(r + 1);
        } else {
          script += "NULL";
        }
      }
      script += ");\n";
    }
  }
  script += "COMMIT;\n";
  db.Exec(script);
  return db;
}

}  // namespace nlsql
