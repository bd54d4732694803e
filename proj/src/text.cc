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

#include "nlsql/text.h"

#include <cctype>
#include <string>

namespace nlsql {
namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsPeelable(char c) {
  switch (c) {
    case '.':
    case ',':
    case '?':
    case '!':
    case ';':
    case ':':
    case '"':
    case '(':
    case ')':
      return true;
    default:
      return false;
  }
}

bool IsClosing(std::string_view token) {
  return token == "." || token == "," || token == "?" || token == "!" ||
         token == ";" || token == ":" || token == ")";
}

}  // namespace

std::string ToLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string ToUpper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && IsSpace(s[b])) ++b;
  while (e > b && IsSpace(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

std::string Normalize(std::string_view s) { return ToLower(Trim(s)); }

std::string CollapseWhitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (IsSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string NormalizePhrase(std::string_view s) {
  return ToLower(CollapseWhitespace(s));
}

std::string IdentifierToWords(std::string_view identifier) {
  std::string out;
  for (char c : identifier) {
    if (c == '_') {
      if (!out.empty() && out.back() != ' ') out.push_back(' ');
    } else {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::string Pluralize(std::string_view phrase) {
  std::string out(phrase);
  if (out.empty()) return out;
  const std::size_t space = out.find_last_of(' ');
  const std::string last = space == std::string::npos ? out : out.substr(space + 1);
  auto ends_with = [&](std::string_view suffix) {
    return last.size() >= suffix.size() &&
           last.compare(last.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  auto is_vowel = [](char c) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
  };
  if (ends_with("s")) return out;
  if (ends_with("ch") || ends_with("sh") || ends_with("x") || ends_with("z")) {
    return out + "es";
  }
  if (last.size() >= 2 && ends_with("y") && !is_vowel(last[last.size() - 2])) {
    out.pop_back();
    return out + "ies";
  }
  return out + "s";
}

std::string CapitalizeFirst(std::string_view s) {
  std::string out(s);
  if (!out.empty()) {
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  }
  return out;
}

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && IsSpace(text[i])) ++i;
    if (i >= n) break;
    std::size_t j = i;
    while (j < n && !IsSpace(text[j])) ++j;
    // Chunk [i, j): peel punctuation from both ends.
    std::size_t b = i;
    std::size_t e = j;
    std::vector<Token> trailing;
    while (b < e && IsPeelable(text[b])) {
      tokens.push_back({std::string(1, text[b]), b, b + 1});
      ++b;
    }
    while (e > b && IsPeelable(text[e - 1])) {
      trailing.push_back({std::string(1, text[e - 1]), e - 1, e});
      --e;
    }
    if (e > b) tokens.push_back({std::string(text.substr(b, e - b)), b, e});
    for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) {
      tokens.push_back(*it);
    }
    i = j;
  }
  return tokens;
}

std::string Detokenize(const std::vector<std::string>& tokens) {
  std::string out;
  bool after_open = false;
  for (const std::string& t : tokens) {
    if (!out.empty() && !IsClosing(t) && !after_open) out.push_back(' ');
    out += t;
    after_open = (t == "(");
  }
  return out;
}

std::vector<std::string> TokenTexts(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const Token& t : tokens) out.push_back(t.text);
  return out;
}

bool IsPunctuationToken(std::string_view token) {
  return token.size() == 1 && IsPeelable(token[0]);
}

bool IsPlaceholderToken(std::string_view token) {
  if (token.size() < 2 || token[0] != '@') return false;
  if (!std::isalpha(static_cast<unsigned char>(token[1]))) return false;
  for (char c : token.substr(1)) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

bool IsNumericLiteral(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') i = 1;
  bool digits = false;
  bool dot = false;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits = true;
    } else if (s[i] == '.' && !dot) {
      dot = true;
    } else {
      return false;
    }
  }
  return digits && s.back() != '.';
}

bool IsIntegerLiteral(std::string_view s) {
  return IsNumericLiteral(s) && s.find('.') == std::string_view::npos;
}

bool IsDateLiteral(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  const int month = (s[5] - '0') * 10 + (s[6] - '0');
  const int day = (s[8] - '0') * 10 + (s[9] - '0');
  return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

std::vector<std::string> SplitLines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < text.size()) lines.emplace_back(text.substr(start));
      break;
    }
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    start = nl + 1;
  }
  return lines;
}

std::string JoinStrings(const std::vector<std::string>& parts,
                        std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += separator;
    out += parts[i];
  }
  return out;
}

}  // namespace nlsql
