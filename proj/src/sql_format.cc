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

#include <string>

#include "medsql/sql.h"
#include "medsql/strings.h"
#include "sql_lexer.h"

namespace medsql {
namespace {

using internal::LexKind;

bool IsPlainIdentifier(std::string_view s) {
  if (s.empty()) return false;
  const char c0 = s[0];
  if (!((c0 >= 'a' && c0 <= 'z') || (c0 >= 'A' && c0 <= 'Z') || c0 == '_')) {
    return false;
  }
  for (char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '$';
    if (!ok) return false;
  }
  return true;
}

bool IsReservedWord(std::string_view s) {
  return internal::IsDialectKeyword(s) || internal::IsUnsupportedKeyword(s);
}

std::string FormatColumn(const ColumnRef& ref) {
  if (ref.table.empty()) return ref.column;
  if (IsPlainIdentifier(ref.column) && !IsReservedWord(ref.column)) {
    return ref.table + "." + ref.column;
  }
  return ref.table + ".\"" + EscapeDoubleQuoted(ref.column) + "\"";
}

std::string FormatSelectItem(const SelectItem& item) {
  const std::string target = item.star ? "*" : FormatColumn(item.column);
  if (item.agg == AggOp::kNone) return target;
  std::string out(AggOpName(item.agg));
  out += '(';
  if (item.distinct) out += "DISTINCT ";
  out += target;
  out += ')';
  return out;
}

std::string FormatLiteral(const Literal& lit) {
  if (lit.kind == Literal::Kind::kNumber) return lit.value;
  return "\"" + EscapeDoubleQuoted(lit.value) + "\"";
}

}  // namespace

std::string EscapeDoubleQuoted(std::string_view value) {
  std::string out;
  out.reserve(value.size());
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out;
}

std::string SerializeSql(const SqlQuery& q) {
  std::string out = "SELECT ";
  for (std::size_t i = 0; i < q.select_items.size(); ++i) {
    const auto& item = q.select_items[i];
    if (i > 0) out += ", ";
    if (i == 0 && item.agg == AggOp::kNone && item.distinct) {
      out += "DISTINCT ";
    }
    out += FormatSelectItem(item);
  }
  out += " FROM ";
  out += q.main_table;
  for (const auto& j : q.joins) {
    out += " INNER JOIN " + j.table + " ON " + FormatColumn(j.left) + " = " +
           FormatColumn(j.right);
  }
  for (std::size_t i = 0; i < q.conditions.size(); ++i) {
    const auto& c = q.conditions[i];
    if (i == 0) {
      out += " WHERE ";
    } else {
      out += c.connector == Connector::kAnd ? " AND " : " OR ";
    }
    out += FormatColumn(c.column);
    out += ' ';
    out += CompareOpSymbol(c.op);
    out += ' ';
    out += FormatLiteral(c.value);
  }
  return out;
}

TokenSeq TokenizeSql(std::string_view text) {
  TokenSeq seq;
  for (const auto& lx : internal::Lex(text)) {
    switch (lx.kind) {
      case LexKind::kEnd:
        break;
      case LexKind::kString:
        seq.tokens.push_back("\"" + EscapeDoubleQuoted(lx.value) + "\"");
        break;
      case LexKind::kQuotedIdentifier: {
        std::string folded = AsciiLower(lx.value);
        if (IsPlainIdentifier(folded)) {
          seq.tokens.push_back(std::move(folded));
        } else {
          seq.tokens.push_back("\"" + EscapeDoubleQuoted(folded) + "\"");
        }
        break;
      }
      case LexKind::kIdentifier:
      case LexKind::kNumber:
      case LexKind::kSymbol:
        seq.tokens.push_back(AsciiLower(lx.text));
        break;
    }
  }
  return seq;
}

std::string ToSqliteSql(std::string_view text) {
  std::string out;
  out.reserve(text.size() + 8);
  std::size_t copied = 0;
  for (const auto& lx : internal::Lex(text)) {
    if (lx.kind != LexKind::kString && lx.kind != LexKind::kQuotedIdentifier) {
      continue;
    }
    out.append(text.substr(copied, lx.offset - copied));
    const char quote = lx.kind == LexKind::kString ? '\'' : '"';
    out += quote;
    for (char c : lx.value) {
      if (c == quote) out += quote;
      out += c;
    }
    out += quote;
    copied = lx.offset + lx.length;
  }
  out.append(text.substr(copied));
  return out;
}

}  // namespace medsql
