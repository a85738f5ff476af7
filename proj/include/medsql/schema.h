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

#ifndef MEDSQL_SCHEMA_H_
#define MEDSQL_SCHEMA_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "medsql/json.h"

namespace medsql {

// Column attribute types. `datetime` columns are stored as text and compare
// lexically.
enum class ColumnAttr { kText, kNumber, kDatetime };

std::string_view ColumnAttrName(ColumnAttr attr);  // "text", "number", ...
ColumnAttr ParseColumnAttr(std::string_view name);  // throws SchemaError

struct ColumnDef {
  std::string name;
  ColumnAttr attr = ColumnAttr::kText;
  friend bool operator==(const ColumnDef&, const ColumnDef&) = default;
};

struct TableDef {
  std::string name;
  std::vector<ColumnDef> columns;

  // Case-insensitive lookup; nullptr when absent.
  const ColumnDef* FindColumn(std::string_view column) const;
  friend bool operator==(const TableDef&, const TableDef&) = default;
};

struct SchemaDef {
  std::vector<TableDef> tables;

  const TableDef* FindTable(std::string_view table) const;
  friend bool operator==(const SchemaDef&, const SchemaDef&) = default;
};

// Table names unique, column names unique per table (both
// case-insensitively), names non-empty. Throws SchemaError.
void ValidateSchema(const SchemaDef& schema);

// {"format_version": 1, "tables": [{"name": ..., "columns":
//   [{"name": ..., "attr": "text"}, ...]}, ...]}
Json SchemaToJson(const SchemaDef& schema);
SchemaDef SchemaFromJson(const Json& json);  // validates

SchemaDef LoadSchema(const std::filesystem::path& path);
void SaveSchema(const std::filesystem::path& path, const SchemaDef& schema);

}  // namespace medsql

#endif  // MEDSQL_SCHEMA_H_
