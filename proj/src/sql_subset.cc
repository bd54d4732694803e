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

#include "nlsql/sql_subset.h"

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "nlsql/text.h"

namespace nlsql {
namespace {

enum class Tok { kIdent, kNumber, kString, kPlaceholder, kSymbol, kEnd };

struct Lexeme {
  Tok kind;
  std::string text;   // identifiers upper-cased into `upper`
  std::string upper;
  std::size_t offset;
};

struct SyntaxError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<Lexeme> Lex(std::string_view sql) {
  std::vector<Lexeme> out;
  std::size_t i = 0;
  const std::size_t n = sql.size();
  auto is_ident_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  };
  while (i < n) {
    const char c = sql[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < n && is_ident_char(sql[i])) ++i;
      std::string text(sql.substr(start, i - start));
      out.push_back({Tok::kIdent, text, ToUpper(text), start});
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(sql[i + 1])))) {
      bool dot = false;
      while (i < n && (std::isdigit(static_cast<unsigned char>(sql[i])) || (sql[i] == '.' && !dot))) {
        if (sql[i] == '.') dot = true;
        ++i;
      }
      if (i < n && is_ident_char(sql[i])) {
        throw SyntaxError("malformed number at offset " + std::to_string(start));
      }
      std::string text(sql.substr(start, i - start));
      out.push_back({Tok::kNumber, text, text, start});
    } else if (c == '\'') {
      ++i;
      std::string value;
      bool closed = false;
      while (i < n) {
        if (sql[i] == '\'') {
          if (i + 1 < n && sql[i + 1] == '\'') {
            value.push_back('\'');
            i += 2;
            continue;
          }
          ++i;
          closed = true;
          break;
        }
        value.push_back(sql[i++]);
      }
      if (!closed) throw SyntaxError("unterminated string literal at offset " + std::to_string(start));
      out.push_back({Tok::kString, value, value, start});
    } else if (c == '@') {
      ++i;
      if (i >= n || !std::isalpha(static_cast<unsigned char>(sql[i]))) {
        throw SyntaxError("malformed placeholder at offset " + std::to_string(start));
      }
      while (i < n && is_ident_char(sql[i])) ++i;
      std::string text(sql.substr(start, i - start));
      out.push_back({Tok::kPlaceholder, text, text, start});
    } else {
      static const char* kTwo[] = {"<=", ">=", "<>", "!="};
      std::string sym(1, c);
      for (const char* two : kTwo) {
        if (sql.substr(i, 2) == two) sym = two;
      }
      if (sym.size() == 1 && std::string_view("(),.*=<>+-/;").find(c) == std::string_view::npos) {
        throw SyntaxError(std::string("unexpected character '") + c + "' at offset " +
                          std::to_string(start));
      }
      i += sym.size();
      out.push_back({Tok::kSymbol, sym, sym, start});
    }
  }
  out.push_back({Tok::kEnd, "", "", n});
  return out;
}

bool IsReserved(const std::string& upper) {
  static const char* kWords[] = {
      "SELECT", "FROM", "WHERE", "GROUP", "BY", "HAVING", "ORDER", "LIMIT",
      "AND", "OR", "NOT", "AS", "ON", "JOIN", "INNER", "DISTINCT", "ASC",
      "DESC", "IN", "IS", "NULL", "LIKE", "BETWEEN"};
  for (const char* w : kWords) {
    if (upper == w) return true;
  }
  return false;
}

bool IsAggregate(const std::string& upper) {
  return upper == "COUNT" || upper == "SUM" || upper == "AVG" ||
         upper == "MIN" || upper == "MAX";
}

class Parser {
 public:
  explicit Parser(std::vector<Lexeme> lexemes) : lex_(std::move(lexemes)) {}

  void ParseStatement() {
    ParseQuery();
    if (PeekSymbol(";")) ++pos_;
    if (Peek().kind != Tok::kEnd) Fail("unexpected trailing input");
  }

  std::vector<std::string> placeholders;

 private:
  const Lexeme& Peek(std::size_t ahead = 0) const {
    return lex_[std::min(pos_ + ahead, lex_.size() - 1)];
  }
  bool PeekKeyword(const char* kw, std::size_t ahead = 0) const {
    const Lexeme& l = Peek(ahead);
    return l.kind == Tok::kIdent && l.upper == kw;
  }
  bool PeekSymbol(const char* sym) const {
    const Lexeme& l = Peek();
    return l.kind == Tok::kSymbol && l.text == sym;
  }
  bool AcceptKeyword(const char* kw) {
    if (!PeekKeyword(kw)) return false;
    ++pos_;
    return true;
  }
  bool AcceptSymbol(const char* sym) {
    if (!PeekSymbol(sym)) return false;
    ++pos_;
    return true;
  }
  void ExpectKeyword(const char* kw) {
    if (!AcceptKeyword(kw)) Fail(std::string("expected ") + kw);
  }
  void ExpectSymbol(const char* sym) {
    if (!AcceptSymbol(sym)) Fail(std::string("expected '") + sym + "'");
  }
  [[noreturn]] void Fail(const std::string& what) const {
    const Lexeme& l = Peek();
    std::string near = l.kind == Tok::kEnd ? "end of input" : "'" + l.text + "'";
    throw SyntaxError(what + " near " + near + " at offset " + std::to_string(l.offset));
  }

  void ParseIdentifier() {
    const Lexeme& l = Peek();
    if (l.kind != Tok::kIdent || IsReserved(l.upper)) Fail("expected identifier");
    ++pos_;
  }

  void ParseQuery() {
    ExpectKeyword("SELECT");
    AcceptKeyword("DISTINCT");
    if (!AcceptSymbol("*")) {
      do {
        ParseSelectItem();
      } while (AcceptSymbol(","));
    }
    ExpectKeyword("FROM");
    ParseTableRef();
    while (PeekKeyword("JOIN") || PeekKeyword("INNER")) {
      AcceptKeyword("INNER");
      ExpectKeyword("JOIN");
      ParseTableRef();
      ExpectKeyword("ON");
      ParseExpr();
    }
    if (AcceptKeyword("WHERE")) ParseExpr();
    if (AcceptKeyword("GROUP")) {
      ExpectKeyword("BY");
      do {
        ParseExpr();
      } while (AcceptSymbol(","));
    }
    if (AcceptKeyword("HAVING")) ParseExpr();
    if (AcceptKeyword("ORDER")) {
      ExpectKeyword("BY");
      do {
        ParseExpr();
        if (!AcceptKeyword("ASC")) AcceptKeyword("DESC");
      } while (AcceptSymbol(","));
    }
    if (AcceptKeyword("LIMIT")) {
      if (Peek().kind != Tok::kNumber || !IsIntegerLiteral(Peek().text)) {
        Fail("LIMIT expects an integer");
      }
      ++pos_;
    }
  }

  void ParseSelectItem() {
    // table.* is allowed in the select list.
    if (Peek().kind == Tok::kIdent && Peek(1).kind == Tok::kSymbol &&
        Peek(1).text == "." && Peek(2).kind == Tok::kSymbol && Peek(2).text == "*") {
      ParseIdentifier();
      pos_ += 2;
      return;
    }
    ParseExpr();
    if (AcceptKeyword("AS")) ParseIdentifier();
  }

  void ParseTableRef() {
    ParseIdentifier();
    if (AcceptKeyword("AS")) {
      ParseIdentifier();
    } else if (Peek().kind == Tok::kIdent && !IsReserved(Peek().upper)) {
      ParseIdentifier();
    }
  }

  void ParseExpr() { ParseOr(); }

  void ParseOr() {
    ParseAnd();
    while (AcceptKeyword("OR")) ParseAnd();
  }

  void ParseAnd() {
    ParseNot();
    while (AcceptKeyword("AND")) ParseNot();
  }

  void ParseNot() {
    if (AcceptKeyword("NOT")) {
      ParseNot();
      return;
    }
    ParseComparison();
  }

  void ParseComparison() {
    ParseAdditive();
    static const char* kOps[] = {"=", "<>", "!=", "<", ">", "<=", ">="};
    for (const char* op : kOps) {
      if (AcceptSymbol(op)) {
        ParseAdditive();
        return;
      }
    }
    if (AcceptKeyword("IS")) {
      AcceptKeyword("NOT");
      ExpectKeyword("NULL");
      return;
    }
    const bool negated = AcceptKeyword("NOT");
    if (AcceptKeyword("LIKE")) {
      ParseAdditive();
    } else if (AcceptKeyword("IN")) {
      ExpectSymbol("(");
      if (PeekKeyword("SELECT")) {
        ParseQuery();
      } else {
        do {
          ParseAdditive();
        } while (AcceptSymbol(","));
      }
      ExpectSymbol(")");
    } else if (AcceptKeyword("BETWEEN")) {
      ParseAdditive();
      ExpectKeyword("AND");
      ParseAdditive();
    } else if (negated) {
      Fail("expected LIKE, IN or BETWEEN after NOT");
    }
  }

  void ParseAdditive() {
    ParseMultiplicative();
    while (AcceptSymbol("+") || AcceptSymbol("-")) ParseMultiplicative();
  }

  void ParseMultiplicative() {
    ParseUnary();
    while (AcceptSymbol("*") || AcceptSymbol("/")) ParseUnary();
  }

  void ParseUnary() {
    if (AcceptSymbol("-")) {
      ParseUnary();
      return;
    }
    ParsePrimary();
  }

  void ParsePrimary() {
    const Lexeme& l = Peek();
    switch (l.kind) {
      case Tok::kNumber:
      case Tok::kString:
        ++pos_;
        return;
      case Tok::kPlaceholder:
        placeholders.push_back(l.text);
        ++pos_;
        return;
      case Tok::kIdent:
        if (l.upper == "NULL") {
          ++pos_;
          return;
        }
        if (IsAggregate(l.upper) && Peek(1).kind == Tok::kSymbol && Peek(1).text == "(") {
          const bool is_count = l.upper == "COUNT";
          pos_ += 2;
          AcceptKeyword("DISTINCT");
          if (!(is_count && AcceptSymbol("*"))) ParseExpr();
          ExpectSymbol(")");
          return;
        }
        ParseIdentifier();
        if (AcceptSymbol(".")) ParseIdentifier();
        return;
      case Tok::kSymbol:
        if (l.text == "(") {
          ++pos_;
          if (PeekKeyword("SELECT")) {
            ParseQuery();
          } else {
            ParseExpr();
          }
          ExpectSymbol(")");
          return;
        }
        Fail("unexpected symbol");
      case Tok::kEnd:
        Fail("unexpected end of query");
    }
  }

  std::vector<Lexeme> lex_;
  std::size_t pos_ = 0;
};

}  // namespace

SqlCheckResult CheckSqlSubset(std::string_view sql) {
  SqlCheckResult result;
  try {
    Parser parser(Lex(sql));
    parser.ParseStatement();
    result.ok = true;
    result.placeholders = std::move(parser.placeholders);
  } catch (const SyntaxError& e) {
    result.ok = false;
    result.error = e.what();
  }
  return result;
}

std::vector<std::string> ExtractSqlPlaceholders(std::string_view sql) {
  std::vector<std::string> out;
  bool in_string = false;
  for (std::size_t i = 0; i < sql.size(); ++i) {
    const char c = sql[i];
    if (in_string) {
      if (c == '\'') {
        if (i + 1 < sql.size() && sql[i + 1] == '\'') {
          ++i;
        } else {
          in_string = false;
        }
      }
      continue;
    }
    if (c == '\'') {
      in_string = true;
    } else if (c == '@' && i + 1 < sql.size() &&
               std::isalpha(static_cast<unsigned char>(sql[i + 1]))) {
      std::size_t j = i + 1;
      while (j < sql.size() &&
             (std::isalnum(static_cast<unsigned char>(sql[j])) || sql[j] == '_')) {
        ++j;
      }
      out.emplace_back(sql.substr(i, j - i));
      i = j - 1;
    }
  }
  return out;
}

}  // namespace nlsql
