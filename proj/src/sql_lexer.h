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

#ifndef MEDSQL_SRC_SQL_LEXER_H_
#define MEDSQL_SRC_SQL_LEXER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace medsql::internal {

enum class LexKind {
  kIdentifier,        // bare word, keyword or name
  kNumber,            // digits with an optional fractional part
  kString,            // quoted text literal
  kQuotedIdentifier,  // quoted token directly after '.'
  kSymbol,            // punctuation or operator
  kEnd,
};

struct Lexeme {
  LexKind kind;
  std::string text;    // source spelling (including quotes)
  std::string value;   // unquoted content for kString/kQuotedIdentifier
  std::size_t offset;  // byte offset into the source
  std::size_t length;
};

// Keywords of the dialect itself (SELECT, FROM, ...).
bool IsDialectKeyword(std::string_view word);
// Keywords of SQL constructs the dialect rejects (GROUP, ORDER, ...).
bool IsUnsupportedKeyword(std::string_view word);

// Always ends with a kEnd lexeme at offset == text.size().
// Throws UnterminatedLiteral.
std::vector<Lexeme> Lex(std::string_view text);

}  // namespace medsql::internal

#endif  // MEDSQL_SRC_SQL_LEXER_H_
