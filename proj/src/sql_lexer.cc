// Copyright 2026 The medsql Authors.
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

#include "sql_lexer.h"

#include <algorithm>
#include <array>

#include "medsql/errors.h"
#include "medsql/strings.h"

namespace medsql::internal {
namespace {

bool IsIdentStart(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool IsDigit(char c) { return c >= '0' && c <= '9'; }

bool IsIdentChar(char c) { return IsIdentStart(c) || IsDigit(c) || c == '$'; }

constexpr std::array<std::string_view, 10> kDialectKeywords = {
    "SELECT", "FROM", "WHERE", "INNER", "JOIN",
    "ON",     "AND",  "OR",    "LIKE",  "DISTINCT"};

constexpr std::array<std::string_view, 25> kUnsupportedKeywords = {
    "GROUP", "ORDER",   "HAVING", "LIMIT", "OFFSET", "UNION", "INTERSECT",
    "EXCEPT", "LEFT",   "RIGHT",  "FULL",  "OUTER",  "CROSS", "NATURAL",
    "NOT",   "IN",      "BETWEEN", "IS",   "AS",     "WITH",  "CASE",
    "EXISTS", "USING",  "ALL",    "ANY"};

template <std::size_t N>
bool InList(std::string_view word, const std::array<std::string_view, N>& list) {
  return std::any_of(list.begin(), list.end(), [&](std::string_view kw) {
    return EqualsIgnoreCase(word, kw);
  });
}

}  // namespace

bool IsDialectKeyword(std::string_view word) {
  return InList(word, kDialectKeywords);
}

bool IsUnsupportedKeyword(std::string_view word) {
  return InList(word, kUnsupportedKeywords);
}

std::vector<Lexeme> Lex(std::string_view text) {
  std::vector<Lexeme> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (IsSpace(c)) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (IsIdentStart(c)) {
      while (i < n && IsIdentChar(text[i])) ++i;
      out.push_back({LexKind::kIdentifier, std::string(text.substr(start, i - start)),
                     {}, start, i - start});
      continue;
    }
    if (IsDigit(c)) {
      while (i < n && IsDigit(text[i])) ++i;
      if (i + 1 < n && text[i] == '.' && IsDigit(text[i + 1])) {
        ++i;
        while (i < n && IsDigit(text[i])) ++i;
      }
      out.push_back({LexKind::kNumber, std::string(text.substr(start, i - start)),
                     {}, start, i - start});
      continue;
    }
    if (c == '"' || c == '\'') {
      std::string value;
      ++i;
      bool closed = false;
      while (i < n) {
        if (text[i] == c) {
          if (i + 1 < n && text[i + 1] == c) {
            value += c;
            i += 2;
            continue;
          }
          ++i;
          closed = true;
          break;
        }
        value += text[i++];
      }
      if (!closed) throw UnterminatedLiteral(start);
      const bool after_dot = !out.empty() &&
                             out.back().kind == LexKind::kSymbol &&
                             out.back().text == ".";
      const LexKind kind =
          after_dot ? LexKind::kQuotedIdentifier : LexKind::kString;
      out.push_back({kind, std::string(text.substr(start, i - start)),
                     std::move(value), start, i - start});
      continue;
    }
    if (i + 1 < n) {
      const std::string_view two = text.substr(i, 2);
      if (two == "<=" || two == ">=" || two == "!=" || two == "<>" ||
          two == "==") {
        out.push_back({LexKind::kSymbol, std::string(two), {}, start, 2});
        i += 2;
        continue;
      }
    }
    out.push_back({LexKind::kSymbol, std::string(1, c), {}, start, 1});
    ++i;
  }
  out.push_back({LexKind::kEnd, "", {}, n, 0});
  return out;
}

}  // namespace medsql::internal
