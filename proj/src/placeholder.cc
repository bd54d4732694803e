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

#include "nlsql/placeholder.h"

#include <map>

#include "nlsql/text.h"

namespace nlsql {

std::string PlaceholderBase(const Schema& schema, const ColumnRef& column) {
  if (schema.ColumnNameCount(column.column) > 1) {
    return "@" + ToUpper(column.table) + "_" + ToUpper(column.column);
  }
  return "@" + ToUpper(column.column);
}

std::vector<std::string> AssignOrdinals(const std::vector<std::string>& bases) {
  std::map<std::string, int> totals;
  for (const std::string& b : bases) ++totals[b];
  std::map<std::string, int> seen;
  std::vector<std::string> out;
  out.reserve(bases.size());
  for (const std::string& b : bases) {
    if (totals[b] > 1) {
      out.push_back(b + "_" + std::to_string(++seen[b]));
    } else {
      out.push_back(b);
    }
  }
  return out;
}

}  // namespace nlsql
