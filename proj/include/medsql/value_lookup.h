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

#ifndef MEDSQL_VALUE_LOOKUP_H_
#define MEDSQL_VALUE_LOOKUP_H_

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "medsql/exec_db.h"
#include "medsql/schema.h"

namespace medsql {

struct ValueSet {
  std::string table;
  std::string column;
  ColumnAttr attr = ColumnAttr::kText;
  // Distinct non-NULL values as canonical strings, sorted bytewise.
  std::vector<std::string> values;
};

// Distinct values per (table, column). Lookups ignore identifier case.
class ValueLookup {
 public:
  // Sorts and deduplicates `values`. Replaces any existing entry.
  void Set(std::string table, std::string column, ColumnAttr attr,
           std::vector<std::string> values);

  // nullptr when the column is unknown.
  const ValueSet* Find(std::string_view table, std::string_view column) const;

  std::vector<const ValueSet*> Entries() const;
  std::size_t size() const { return sets_.size(); }

 private:
  std::map<std::pair<std::string, std::string>, ValueSet> sets_;
};

// One entry per schema column. Throws DbError when a table or column is
// missing from the database.
ValueLookup BuildValueLookup(const ExecDb& db, const SchemaDef& schema);

}  // namespace medsql

#endif  // MEDSQL_VALUE_LOOKUP_H_
