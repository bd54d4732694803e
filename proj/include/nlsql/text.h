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

#ifndef NLSQL_TEXT_H_
#define NLSQL_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace nlsql {

// Case-fold (ASCII) and trim surrounding whitespace. Idempotent.
std::string Normalize(std::string_view s);

// Normalize and collapse internal whitespace runs to one space.
std::string NormalizePhrase(std::string_view s);

std::string ToLower(std::string_view s);
std::string ToUpper(std::string_view s);
std::string Trim(std::string_view s);

// "length_of_stay" -> "length of stay".
std::string IdentifierToWords(std::string_view identifier);

// Naive English plural of the last word of a phrase: "name" -> "names",
// "city" -> "cities", "patients" -> "patients".
std::string Pluralize(std::string_view phrase);

// Upper-cases the first byte if it is an ASCII letter.
std::string CapitalizeFirst(std::string_view s);

struct Token {
  std::string text;
  std::size_t begin = 0;  // byte offset into the source text
  std::size_t end = 0;    // one past the last byte
};

// Splits on whitespace and peels leading/trailing punctuation
// (. , ? ! ; : " ( )) into their own tokens. Offsets index the input.
std::vector<Token> Tokenize(std::string_view text);

// Joins tokens with single spaces, attaching closing punctuation to the
// preceding token. Detokenize(Tokenize(s)) == s for text built by Detokenize.
std::string Detokenize(const std::vector<std::string>& tokens);

std::vector<std::string> TokenTexts(const std::vector<Token>& tokens);

bool IsPunctuationToken(std::string_view token);
bool IsPlaceholderToken(std::string_view token);

// Digits with an optional leading sign and at most one decimal point.
bool IsNumericLiteral(std::string_view s);
bool IsIntegerLiteral(std::string_view s);
// YYYY-MM-DD
bool IsDateLiteral(std::string_view s);

// Collapses whitespace runs and trims; used for duplicate detection.
std::string CollapseWhitespace(std::string_view s);

std::vector<std::string> SplitLines(std::string_view text);

std::string JoinStrings(const std::vector<std::string>& parts,
                        std::string_view separator);

}  // namespace nlsql

#endif  // NLSQL_TEXT_H_
