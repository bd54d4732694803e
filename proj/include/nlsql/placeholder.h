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

#ifndef NLSQL_PLACEHOLDER_H_
#define NLSQL_PLACEHOLDER_H_

#include <string>
#include <vector>

#include "nlsql/schema.h"

namespace nlsql {

// "@STATE" for cities.state; "@CITIES_NAME" when another table also has a
// column called `name`.
std::string PlaceholderBase(const Schema& schema, const ColumnRef& column);

// Appends _1, _2, ... to every base that occurs more than once, numbering in
// order of occurrence; unique bases are returned unchanged.
std::vector<std::string> AssignOrdinals(const std::vector<std::string>& bases);

}  // namespace nlsql

#endif  // NLSQL_PLACEHOLDER_H_
