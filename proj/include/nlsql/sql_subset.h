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

#ifndef NLSQL_SQL_SUBSET_H_
#define NLSQL_SQL_SUBSET_H_

#include <string>
#include <string_view>
#include <vector>

namespace nlsql {

// The SQL subset emitted by the template catalog and accepted for gold
// queries: single SELECT blocks with optional DISTINCT, inner joins, WHERE,
// GROUP BY, HAVING, ORDER BY, LIMIT, the aggregates COUNT/SUM/AVG/MIN/MAX,
// scalar or IN subqueries, literals, and @PLACEHOLDER tokens.
struct SqlCheckResult {
  bool ok = false;
  std::string error;                      // empty when ok
  std::vector<std::string> placeholders;  // in order of occurrence
};

SqlCheckResult CheckSqlSubset(std::string_view sql);

inline bool ParsesAsSqlSubset(std::string_view sql) {
  return CheckSqlSubset(sql).ok;
}

// Placeholder tokens outside string literals, in order of occurrence.
std::vector<std::string> ExtractSqlPlaceholders(std::string_view sql);

}  // namespace nlsql

#endif  // NLSQL_SQL_SUBSET_H_
