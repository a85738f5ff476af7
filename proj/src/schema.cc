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

#include "medsql/schema.h"

#include <set>

#include "medsql/errors.h"
#include "medsql/file_util.h"
#include "medsql/strings.h"

namespace medsql {

std::string_view ColumnAttrName(ColumnAttr attr) {
  switch (attr) {
    case ColumnAttr::kText:
      return "text";
    case ColumnAttr::kNumber:
      return "number";
    case ColumnAttr::kDatetime:
      return "datetime";
  }
  return "text";
}

ColumnAttr ParseColumnAttr(std::string_view name) {
  if (EqualsIgnoreCase(name, "text")) return ColumnAttr::kText;
  if (EqualsIgnoreCase(name, "number")) return ColumnAttr::kNumber;
  if (EqualsIgnoreCase(name, "datetime")) return ColumnAttr::kDatetime;
  throw SchemaError("unknown column attribute '" + std::string(name) + "'");
}

const ColumnDef* TableDef::FindColumn(std::string_view column) const {
  for (const auto& c : columns) {
    if (EqualsIgnoreCase(c.name, column)) return &c;
  }
  return nullptr;
}

const TableDef* SchemaDef::FindTable(std::string_view table) const {
  for (const auto& t : tables) {
    if (EqualsIgnoreCase(t.name, table)) return &t;
  }
  return nullptr;
}

void ValidateSchema(const SchemaDef& schema) {
  std::set<std::string> table_names;
  for (const auto& t : schema.tables) {
    if (t.name.empty()) throw SchemaError("table with empty name");
    if (!table_names.insert(AsciiLower(t.name)).second) {
      throw SchemaError("duplicate table '" + t.name + "'");
    }
    std::set<std::string> column_names;
    for (const auto& c : t.columns) {
      if (c.name.empty()) {
        throw SchemaError("column with empty name in table '" + t.name + "'");
      }
      if (!column_names.insert(AsciiLower(c.name)).second) {
        throw SchemaError("duplicate column '" + c.name + "' in table '" +
                          t.name + "'");
      }
    }
  }
}

Json SchemaToJson(const SchemaDef& schema) {
  Json tables = Json::array();
  for (const auto& t : schema.tables) {
    Json columns = Json::array();
    for (const auto& c : t.columns) {
      columns.push_back({{"name", c.name}, {"attr", ColumnAttrName(c.attr)}});
    }
    tables.push_back({{"name", t.name}, {"columns", std::move(columns)}});
  }
  return {{"format_version", kFormatVersion}, {"tables", std::move(tables)}};
}

SchemaDef SchemaFromJson(const Json& json) {
  SchemaDef schema;
  try {
    for (const auto& t : json.at("tables")) {
      TableDef table;
      table.name = t.at("name").get<std::string>();
      for (const auto& c : t.at("columns")) {
        table.columns.push_back(
            {c.at("name").get<std::string>(),
             ParseColumnAttr(c.at("attr").get<std::string>())});
      }
      schema.tables.push_back(std::move(table));
    }
  } catch (const Json::exception& e) {
    throw SchemaError(std::string("malformed schema: ") + e.what());
  }
  ValidateSchema(schema);
  return schema;
}

SchemaDef LoadSchema(const std::filesystem::path& path) {
  Json json;
  try {
    json = Json::parse(ReadFile(path));
  } catch (const Json::exception& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
  return SchemaFromJson(json);
}

void SaveSchema(const std::filesystem::path& path, const SchemaDef& schema) {
  WriteFileAtomic(path, SchemaToJson(schema).dump(2) + "\n");
}

}  // namespace medsql
