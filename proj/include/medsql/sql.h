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

#ifndef MEDSQL_SQL_H_
#define MEDSQL_SQL_H_

#include <string>
#include <string_view>
#include <vector>

#include "medsql/sql_query.h"

namespace medsql {

// Parses one statement of the dialect. An optional trailing ';' is allowed.
//
// String literals may use single or double quotes. A double-quoted token
// directly after `table.` is a quoted column identifier (the MIMICSQL release
// writes `DEMOGRAPHIC."AGE"`); anywhere else it is a text literal.
//
// Throws ParseError (offset + expected-token set) on malformed input,
// UnsupportedSyntax for constructs outside the dialect, and
// UnterminatedLiteral for an unclosed quote.
SqlQuery ParseSql(std::string_view text);

// Canonical single-line rendering: upper-case keywords, identifiers as
// written, text literals double-quoted with embedded quotes doubled.
std::string SerializeSql(const SqlQuery& q);

// Normalized token sequence used for logic-form comparison.
//
// Keywords, identifiers and numbers are ASCII case-folded. Quoted literals
// stay single tokens with their content verbatim, re-quoted with double
// quotes. Punctuation and operators are standalone tokens. Whitespace only
// separates. Works on arbitrary text; does not require a parseable query.
struct TokenSeq {
  std::vector<std::string> tokens;
  friend bool operator==(const TokenSeq&, const TokenSeq&) = default;
};
TokenSeq TokenizeSql(std::string_view text);

// Rewrites dialect text into SQLite syntax: text literals become
// single-quoted, quoted column identifiers stay double-quoted. Everything
// else is copied through, so non-dialect SQL is still executable.
std::string ToSqliteSql(std::string_view text);

// Escapes a value for placement inside a double-quoted literal.
std::string EscapeDoubleQuoted(std::string_view value);

}  // namespace medsql

#endif  // MEDSQL_SQL_H_
