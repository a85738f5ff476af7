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

// AST of the restricted SQL dialect used by MIMICSQL-style corpora:
//
//   SELECT item[, item...] FROM table
//     [INNER JOIN table ON col = col]...
//     [WHERE cond [AND|OR cond]...]
//
// No nesting, grouping, ordering or aliasing. Identifiers keep the spelling
// they were written with and compare case-insensitively; literal values
// compare byte-exact.

#ifndef MEDSQL_SQL_QUERY_H_
#define MEDSQL_SQL_QUERY_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace medsql {

enum class AggOp { kNone, kCount, kMax, kMin, kAvg, kSum };
enum class CompareOp { kEq, kNeq, kLt, kLte, kGt, kGte, kLike };
enum class Connector { kAnd, kOr };
enum class TablePosition { kMain, kJoined };

std::string_view AggOpName(AggOp op);        // "COUNT", "" for kNone
std::string_view CompareOpSymbol(CompareOp op);  // "=", "!=", "LIKE", ...
std::string_view TablePositionName(TablePosition pos);

struct ColumnRef {
  std::string table;  // empty when unqualified
  std::string column;

  friend bool operator==(const ColumnRef& a, const ColumnRef& b);
};

struct SelectItem {
  AggOp agg = AggOp::kNone;
  bool distinct = false;
  bool star = false;  // `*` in place of a column
  ColumnRef column;

  friend bool operator==(const SelectItem& a, const SelectItem& b);
};

struct JoinClause {
  std::string table;
  ColumnRef left;
  ColumnRef right;

  friend bool operator==(const JoinClause& a, const JoinClause& b);
};

struct Literal {
  enum class Kind { kText, kNumber };
  Kind kind = Kind::kText;
  // Unquoted content for text; the numeric lexeme (e.g. "-3.5") for numbers.
  std::string value;

  friend bool operator==(const Literal& a, const Literal& b) = default;
};

struct Condition {
  Connector connector = Connector::kAnd;  // ignored on the first condition
  ColumnRef column;
  CompareOp op = CompareOp::kEq;
  Literal value;
};

struct SqlQuery {
  std::vector<SelectItem> select_items;
  std::string main_table;
  std::vector<JoinClause> joins;
  std::vector<Condition> conditions;

  // Structural equality: identifiers case-insensitive, literals exact,
  // connectors compared from the second condition on.
  friend bool operator==(const SqlQuery& a, const SqlQuery& b);
};

// Every FROM / INNER JOIN table mapped to its position. Keys keep the
// query's spelling.
std::map<std::string, TablePosition> TablePositions(const SqlQuery& q);

}  // namespace medsql

#endif  // MEDSQL_SQL_QUERY_H_
