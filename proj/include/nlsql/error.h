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

#ifndef NLSQL_ERROR_H_
#define NLSQL_ERROR_H_

#include <stdexcept>
#include <string>

namespace nlsql {

// Broad failure classes. The CLI maps them onto exit codes.
enum class ErrorKind {
  kParse,       // malformed input document
  kValidation,  // well-formed input that violates an invariant
  kIo,          // file unreadable / unwritable
  kRuntime,     // failure while executing a pipeline stage
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void ThrowParse(const std::string& message) {
  throw Error(ErrorKind::kParse, message);
}
[[noreturn]] inline void ThrowValidation(const std::string& message) {
  throw Error(ErrorKind::kValidation, message);
}
[[noreturn]] inline void ThrowIo(const std::string& message) {
  throw Error(ErrorKind::kIo, message);
}
[[noreturn]] inline void ThrowRuntime(const std::string& message) {
  throw Error(ErrorKind::kRuntime, message);
}

}  // namespace nlsql

#endif  // NLSQL_ERROR_H_
