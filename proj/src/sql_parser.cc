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

// Recursive-descent parser for the restricted dialect. The grammar is small
// enough that every production is a method; the interesting part is error
// reporting, which distinguishes "malformed" (ParseError with the set of
// tokens that would have been accepted) from "well-formed SQL we do not
// support" (UnsupportedSyntax).

#include <algorithm>
#include <array>
#include <string>
#include <utility>

#include "medsql/errors.h"
#include "medsql/sql.h"
#include "medsql/strings.h"
#include "sql_lexer.h"

namespace medsql {
namespace {

using internal::Lexeme;
using internal::LexKind;

bool IsKeyword(const Lexeme& lx, std::string_view kw) {
  return lx.kind == LexKind::kIdentifier && EqualsIgnoreCase(lx.text, kw);
}

bool IsUnsupported(const Lexeme& lx) {
  return lx.kind == LexKind::kIdentifier &&
         internal::IsUnsupportedKeyword(lx.text);
}

bool IsSymbol(const Lexeme& lx, std::string_view sym) {
  return lx.kind == LexKind::kSymbol && lx.text == sym;
}

bool ParseAggName(std::string_view word, AggOp* op) {
  static constexpr std::array<std::pair<std::string_view, AggOp>, 5> kAggs = {
      {{"COUNT", AggOp::kCount},
       {"MAX", AggOp::kMax},
       {"MIN", AggOp::kMin},
       {"AVG", AggOp::kAvg},
       {"SUM", AggOp::kSum}}};
  for (const auto& [name, value] : kAggs) {
    if (EqualsIgnoreCase(word, name)) {
      *op = value;
      return true;
    }
  }
  return false;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lx_(internal::Lex(text)) {}

  SqlQuery Parse() {
    SqlQuery q;
    ExpectKeyword("SELECT");
    ParseSelectList(&q);
    ExpectKeyword("FROM");
    q.main_table = ParseTableName();
    while (IsKeyword(Peek(), "INNER")) q.joins.push_back(ParseJoin(q));
    if (IsKeyword(Peek(), "WHERE")) {
      Advance();
      q.conditions.push_back(ParseCondition(Connector::kAnd));
      while (true) {
        if (IsKeyword(Peek(), "AND")) {
          Advance();
          q.conditions.push_back(ParseCondition(Connector::kAnd));
        } else if (IsKeyword(Peek(), "OR")) {
          Advance();
          q.conditions.push_back(ParseCondition(Connector::kOr));
        } else {
          break;
        }
      }
    }
    if (IsSymbol(Peek(), ";")) Advance();
    if (Peek().kind != LexKind::kEnd) {
      Fail({"AND", "INNER JOIN", "OR", "WHERE", "end of input"});
    }
    return q;
  }

 private:
  const Lexeme& Peek(std::size_t ahead = 0) const {
    return lx_[std::min(pos_ + ahead, lx_.size() - 1)];
  }
  const Lexeme& Advance() {
    const Lexeme& cur = lx_[pos_];
    if (pos_ + 1 < lx_.size()) ++pos_;
    return cur;
  }

  [[noreturn]] void Fail(std::vector<std::string> expected) const {
    const Lexeme& cur = Peek();
    if (IsUnsupported(cur)) {
      throw UnsupportedSyntax(cur.offset, AsciiUpper(cur.text));
    }
    if (IsKeyword(cur, "JOIN")) {
      throw UnsupportedSyntax(cur.offset, "JOIN without INNER");
    }
    if (IsSymbol(cur, "(") && IsKeyword(Peek(1), "SELECT")) {
      throw UnsupportedSyntax(cur.offset, "nested query");
    }
    std::sort(expected.begin(), expected.end());
    const std::string found =
        cur.kind == LexKind::kEnd ? "end of input" : "'" + cur.text + "'";
    throw ParseError(cur.offset, std::move(expected), found);
  }

  void ExpectKeyword(std::string_view kw) {
    if (!IsKeyword(Peek(), kw)) Fail({std::string(kw)});
    Advance();
  }

  void ExpectSymbol(std::string_view sym) {
    if (!IsSymbol(Peek(), sym)) Fail({"'" + std::string(sym) + "'"});
    Advance();
  }

  bool IsName(const Lexeme& lx) const {
    return lx.kind == LexKind::kIdentifier &&
           !internal::IsDialectKeyword(lx.text) &&
           !internal::IsUnsupportedKeyword(lx.text);
  }

  std::string ParseTableName() {
    if (!IsName(Peek())) Fail({"table name"});
    return Advance().text;
  }

  ColumnRef ParseColumnRef() {
    if (!IsName(Peek())) Fail({"column name"});
    ColumnRef ref;
    std::string first = Advance().text;
    if (!IsSymbol(Peek(), ".")) {
      ref.column = std::move(first);
      return ref;
    }
    Advance();
    const Lexeme& col = Peek();
    if (col.kind == LexKind::kIdentifier) {
      ref.column = col.text;
    } else if (col.kind == LexKind::kQuotedIdentifier && !col.value.empty()) {
      ref.column = col.value;
    } else {
      Fail({"column name"});
    }
    Advance();
    ref.table = std::move(first);
    return ref;
  }

  void ParseSelectList(SqlQuery* q) {
    bool distinct_list = false;
    std::size_t distinct_offset = 0;
    if (IsKeyword(Peek(), "DISTINCT")) {
      distinct_offset = Advance().offset;
      distinct_list = true;
    }
    q->select_items.push_back(ParseSelectItem());
    while (IsSymbol(Peek(), ",")) {
      Advance();
      q->select_items.push_back(ParseSelectItem());
    }
    if (distinct_list) {
      auto& first = q->select_items.front();
      if (first.agg != AggOp::kNone) {
        throw UnsupportedSyntax(distinct_offset,
                                "DISTINCT ahead of an aggregate select list");
      }
      first.distinct = true;
    }
  }

  SelectItem ParseSelectItem() {
    SelectItem item;
    if (IsSymbol(Peek(), "*")) {
      Advance();
      item.star = true;
      return item;
    }
    AggOp op;
    if (Peek().kind == LexKind::kIdentifier && IsSymbol(Peek(1), "(") &&
        ParseAggName(Peek().text, &op)) {
      Advance();
      Advance();
      item.agg = op;
      if (IsKeyword(Peek(), "DISTINCT")) {
        Advance();
        item.distinct = true;
      }
      if (IsSymbol(Peek(), "*") && op == AggOp::kCount) {
        Advance();
        item.star = true;
      } else {
        if (!IsName(Peek())) {
          Fail(op == AggOp::kCount ? std::vector<std::string>{"'*'", "column name"}
                                   : std::vector<std::string>{"column name"});
        }
        item.column = ParseColumnRef();
      }
      ExpectSymbol(")");
      return item;
    }
    if (!IsName(Peek())) Fail({"'*'", "aggregate", "column name"});
    item.column = ParseColumnRef();
    return item;
  }

  JoinClause ParseJoin(const SqlQuery& q) {
    Advance();  // INNER
    ExpectKeyword("JOIN");
    const std::size_t table_offset = Peek().offset;
    JoinClause join;
    join.table = ParseTableName();
    bool repeated = EqualsIgnoreCase(join.table, q.main_table);
    for (const auto& j : q.joins) {
      repeated = repeated || EqualsIgnoreCase(j.table, join.table);
    }
    if (repeated) {
      throw UnsupportedSyntax(table_offset,
                              "table joined twice (self-joins need aliases)");
    }
    ExpectKeyword("ON");
    join.left = ParseColumnRef();
    ExpectSymbol("=");
    join.right = ParseColumnRef();
    return join;
  }

  Condition ParseCondition(Connector connector) {
    Condition cond;
    cond.connector = connector;
    if (IsSymbol(Peek(), "(")) {
      if (IsKeyword(Peek(1), "SELECT")) {
        throw UnsupportedSyntax(Peek().offset, "nested query");
      }
      throw UnsupportedSyntax(Peek().offset, "parenthesized condition");
    }
    cond.column = ParseColumnRef();
    cond.op = ParseCompareOp();
    cond.value = ParseLiteral();
    return cond;
  }

  CompareOp ParseCompareOp() {
    const Lexeme& lx = Peek();
    static constexpr std::array<std::pair<std::string_view, CompareOp>, 8>
        kOps = {{{"=", CompareOp::kEq},
                 {"==", CompareOp::kEq},
                 {"!=", CompareOp::kNeq},
                 {"<>", CompareOp::kNeq},
                 {"<", CompareOp::kLt},
                 {"<=", CompareOp::kLte},
                 {">", CompareOp::kGt},
                 {">=", CompareOp::kGte}}};
    if (lx.kind == LexKind::kSymbol) {
      for (const auto& [sym, op] : kOps) {
        if (lx.text == sym) {
          Advance();
          return op;
        }
      }
    }
    if (IsKeyword(lx, "LIKE")) {
      Advance();
      return CompareOp::kLike;
    }
    Fail({"'!='", "'<'", "'<='", "'='", "'>'", "'>='", "LIKE"});
  }

  Literal ParseLiteral() {
    const Lexeme& lx = Peek();
    Literal lit;
    if (lx.kind == LexKind::kString) {
      lit.kind = Literal::Kind::kText;
      lit.value = lx.value;
      Advance();
      return lit;
    }
    if (lx.kind == LexKind::kNumber) {
      lit.kind = Literal::Kind::kNumber;
      lit.value = lx.text;
      Advance();
      return lit;
    }
    if (IsSymbol(lx, "-") && Peek(1).kind == LexKind::kNumber) {
      Advance();
      lit.kind = Literal::Kind::kNumber;
      lit.value = "-" + Advance().text;
      return lit;
    }
    if (IsName(lx)) {
      throw UnsupportedSyntax(lx.offset, "column-to-column comparison");
    }
    Fail({"number", "string literal"});
  }

  std::vector<Lexeme> lx_;
  std::size_t pos_ = 0;
};

}  // namespace

SqlQuery ParseSql(std::string_view text) { return Parser(text).Parse(); }

}  // namespace medsql
