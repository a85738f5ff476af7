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

#include "medsql/sql_query.h"

#include "medsql/strings.h"

namespace medsql {

std::string_view AggOpName(AggOp op) {
  switch (op) {
    case AggOp::kNone:
      return "";
    case AggOp::kCount:
      return "COUNT";
    case AggOp::kMax:
      return "MAX";
    case AggOp::kMin:
      return "MIN";
    case AggOp::kAvg:
      return "AVG";
    case AggOp::kSum:
      return "SUM";
  }
  return "";
}

std::string_view CompareOpSymbol(CompareOp op) {
  switch (op) {
    case CompareOp::kEq:
      return "=";
    case CompareOp::kNeq:
      return "!=";
    case CompareOp::kLt:
      return "<";
    case CompareOp::kLte:
      return "<=";
    case CompareOp::kGt:
      return ">";
    case CompareOp::kGte:
      return ">=";
    case CompareOp::kLike:
      return "LIKE";
  }
  return "";
}

std::string_view TablePositionName(TablePosition pos) {
  return pos == TablePosition::kMain ? "MAIN" : "JOINED";
}

bool operator==(const ColumnRef& a, const ColumnRef& b) {
  return EqualsIgnoreCase(a.table, b.table) &&
         EqualsIgnoreCase(a.column, b.column);
}

bool operator==(const SelectItem& a, const SelectItem& b) {
  if (a.agg != b.agg || a.distinct != b.distinct || a.star != b.star) {
    return false;
  }
  return a.star || a.column == b.column;
}

bool operator==(const JoinClause& a, const JoinClause& b) {
  return EqualsIgnoreCase(a.table, b.table) && a.left == b.left &&
         a.right == b.right;
}

bool operator==(const SqlQuery& a, const SqlQuery& b) {
  if (!EqualsIgnoreCase(a.main_table, b.main_table)) return false;
  if (a.select_items != b.select_items || a.joins != b.joins) return false;
  if (a.conditions.size() != b.conditions.size()) return false;
  for (std::size_t i = 0; i < a.conditions.size(); ++i) {
    const auto& x = a.conditions[i];
    const auto& y = b.conditions[i];
    if (i > 0 && x.connector != y.connector) return false;
    if (!(x.column == y.column) || x.op != y.op || !(x.value == y.value)) {
      return false;
    }
  }
  return true;
}

std::map<std::string, TablePosition> TablePositions(const SqlQuery& q) {
  std::map<std::string, TablePosition> out;
  out.emplace(q.main_table, TablePosition::kMain);
  for (const auto& j : q.joins) out.emplace(j.table, TablePosition::kJoined);
  return out;
}

}  // namespace medsql
