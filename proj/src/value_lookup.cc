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

#include "medsql/value_lookup.h"

#include <algorithm>

#include "medsql/errors.h"
#include "medsql/strings.h"

namespace medsql {

void ValueLookup::Set(std::string table, std::string column, ColumnAttr attr,
                      std::vector<std::string> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  auto key = std::make_pair(AsciiLower(table), AsciiLower(column));
  sets_[std::move(key)] =
      ValueSet{std::move(table), std::move(column), attr, std::move(values)};
}

const ValueSet* ValueLookup::Find(std::string_view table,
                                  std::string_view column) const {
  auto it = sets_.find({AsciiLower(table), AsciiLower(column)});
  return it == sets_.end() ? nullptr : &it->second;
}

std::vector<const ValueSet*> ValueLookup::Entries() const {
  std::vector<const ValueSet*> out;
  out.reserve(sets_.size());
  for (const auto& [key, set] : sets_) out.push_back(&set);
  return out;
}

ValueLookup BuildValueLookup(const ExecDb& db, const SchemaDef& schema) {
  ValueLookup lookup;
  for (const TableDef& table : schema.tables) {
    for (const ColumnDef& column : table.columns) {
      const std::string sql = "SELECT DISTINCT " + QuoteSqlIdentifier(column.name) +
                              " FROM " + QuoteSqlIdentifier(table.name) + " WHERE " +
                              QuoteSqlIdentifier(column.name) + " IS NOT NULL";
      const QueryResult r = db.ExecuteNative(sql);
      if (!r.ok) {
        throw DbError("value scan of " + table.name + "." + column.name +
                      " failed: " + r.error);
      }
      std::vector<std::string> values;
      values.reserve(r.rows.size());
      for (const DbRow& row : r.rows) values.push_back(DbValueToString(row[0]));
      lookup.Set(table.name, column.name, column.attr, std::move(values));
    }
  }
  return lookup;
}

}  // namespace medsql
