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

// The execution database: a single SQLite file with one table per schema
// table, plus a metadata table holding the schema it was built from.

#ifndef MEDSQL_EXEC_DB_H_
#define MEDSQL_EXEC_DB_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "medsql/schema.h"

struct sqlite3;

namespace medsql {

inline constexpr std::chrono::milliseconds kDefaultQueryTimeout{5000};

// NULL, INTEGER, REAL, TEXT (BLOBs are returned as their bytes).
using DbValue = std::variant<std::monostate, std::int64_t, double, std::string>;
using DbRow = std::vector<DbValue>;

struct QueryResult {
  bool ok = false;
  bool timed_out = false;
  std::string error;
  std::vector<DbRow> rows;
};

// One read-only connection. Not thread-safe; give every worker its own.
class ExecDb {
 public:
  // Throws DbError when the file is missing or not a database.
  static ExecDb Open(const std::filesystem::path& path);

  ExecDb(ExecDb&&) noexcept;
  ExecDb& operator=(ExecDb&&) noexcept;
  ~ExecDb();

  // Executes one statement written in the corpus dialect (double-quoted
  // literals are rewritten for SQLite). Failures, including exceeding the
  // timeout, come back as ok=false; they are data, not exceptions.
  QueryResult Execute(std::string_view sql,
                      std::chrono::milliseconds timeout = kDefaultQueryTimeout) const;

  // Executes SQLite SQL verbatim.
  QueryResult ExecuteNative(std::string_view sql,
                            std::chrono::milliseconds timeout = kDefaultQueryTimeout) const;

  // Schema recorded at build time, if the database was built by
  // BuildExecDb.
  std::optional<SchemaDef> StoredSchema() const;

  const std::filesystem::path& path() const { return path_; }

 private:
  ExecDb(sqlite3* db, std::filesystem::path path);

  struct Closer {
    void operator()(sqlite3* db) const;
  };
  std::unique_ptr<sqlite3, Closer> db_;
  std::filesystem::path path_;
};

// Creates `out` from one CSV per schema table (header row naming the
// columns, any order, case-insensitive). Empty cells become NULL. Number
// columns must otherwise hold numeric values; text and datetime columns are
// stored as text.
// The file is built beside `out` and renamed into place. Throws CsvError,
// TypeError, SchemaError (missing table file) or DbError.
void BuildExecDb(const SchemaDef& schema,
                 const std::map<std::string, std::filesystem::path>& table_files,
                 const std::filesystem::path& out);

// Canonical text of a value: integers in decimal, reals in shortest
// round-trip form, NULL as "NULL".
std::string DbValueToString(const DbValue& v);

}  // namespace medsql

#endif  // MEDSQL_EXEC_DB_H_
