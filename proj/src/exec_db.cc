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

#include "medsql/exec_db.h"

#include <sqlite3.h>

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <system_error>

#include "medsql/csv.h"
#include "medsql/errors.h"
#include "medsql/file_util.h"
#include "medsql/sql.h"
#include "medsql/strings.h"

namespace medsql {
namespace {

constexpr const char* kMetaTable = "_medsql_meta";

using Clock = std::chrono::steady_clock;

struct Deadline {
  Clock::time_point at;
  bool hit = false;
};

int ProgressCallback(void* arg) {
  auto* deadline = static_cast<Deadline*>(arg);
  if (Clock::now() >= deadline->at) {
    deadline->hit = true;
    return 1;
  }
  return 0;
}

struct StmtCloser {
  void operator()(sqlite3_stmt* s) const { sqlite3_finalize(s); }
};
using Stmt = std::unique_ptr<sqlite3_stmt, StmtCloser>;

struct ConnCloser {
  void operator()(sqlite3* db) const { sqlite3_close_v2(db); }
};

bool OnlyTerminators(const char* tail) {
  for (; tail && *tail; ++tail) {
    if (!IsSpace(*tail) && *tail != ';') return false;
  }
  return true;
}

void Exec(sqlite3* db, const std::string& sql) {
  char* err = nullptr;
  if (sqlite3_exec(db, sql.c_str(), nullptr, nullptr, &err) != SQLITE_OK) {
    std::string msg = err ? err : "unknown error";
    sqlite3_free(err);
    throw DbError(msg + " in: " + sql);
  }
}

Stmt Prepare(sqlite3* db, const std::string& sql) {
  sqlite3_stmt* raw = nullptr;
  if (sqlite3_prepare_v2(db, sql.c_str(), -1, &raw, nullptr) != SQLITE_OK) {
    throw DbError(std::string(sqlite3_errmsg(db)) + " in: " + sql);
  }
  return Stmt(raw);
}

// Parses a number-column cell. Returns false when it is not numeric.
bool ParseNumber(std::string_view cell, DbValue* out) {
  const std::string trimmed = NormalizeWhitespace(cell);
  if (trimmed.empty()) {
    *out = std::monostate{};
    return true;
  }
  std::int64_t iv = 0;
  auto [ptr, ec] =
      std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), iv);
  if (ec == std::errc() && ptr == trimmed.data() + trimmed.size()) {
    *out = iv;
    return true;
  }
  char* end = nullptr;
  errno = 0;
  const double dv = std::strtod(trimmed.c_str(), &end);
  if (end != trimmed.c_str() + trimmed.size() || !std::isfinite(dv)) {
    return false;
  }
  *out = dv;
  return true;
}

}  // namespace

void ExecDb::Closer::operator()(sqlite3* db) const { sqlite3_close_v2(db); }

ExecDb::ExecDb(sqlite3* db, std::filesystem::path path)
    : db_(db), path_(std::move(path)) {}
ExecDb::ExecDb(ExecDb&&) noexcept = default;
ExecDb& ExecDb::operator=(ExecDb&&) noexcept = default;
ExecDb::~ExecDb() = default;

ExecDb ExecDb::Open(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw DbError("database not found: " + path.string());
  }
  sqlite3* raw = nullptr;
  const int rc = sqlite3_open_v2(path.c_str(), &raw, SQLITE_OPEN_READONLY,
                                 nullptr);
  ExecDb db(raw, path);
  if (rc != SQLITE_OK) {
    throw DbError("cannot open " + path.string() + ": " +
                  (raw ? sqlite3_errmsg(raw) : "out of memory"));
  }
  const QueryResult probe = db.ExecuteNative("SELECT count(*) FROM sqlite_master");
  if (!probe.ok) {
    throw DbError("not a database: " + path.string() + ": " + probe.error);
  }
  return db;
}

QueryResult ExecDb::Execute(std::string_view sql,
                            std::chrono::milliseconds timeout) const {
  std::string native;
  try {
    native = ToSqliteSql(sql);
  } catch (const UnterminatedLiteral& e) {
    QueryResult r;
    r.error = e.what();
    return r;
  }
  return ExecuteNative(native, timeout);
}

QueryResult ExecDb::ExecuteNative(std::string_view sql,
                                  std::chrono::milliseconds timeout) const {
  QueryResult result;
  sqlite3* db = db_.get();
  sqlite3_stmt* raw = nullptr;
  const char* tail = nullptr;
  const std::string text(sql);
  if (sqlite3_prepare_v2(db, text.c_str(), static_cast<int>(text.size()), &raw,
                         &tail) != SQLITE_OK) {
    result.error = sqlite3_errmsg(db);
    return result;
  }
  Stmt stmt(raw);
  if (!stmt) {
    result.error = "empty statement";
    return result;
  }
  if (!OnlyTerminators(tail)) {
    result.error = "more than one statement";
    return result;
  }

  Deadline deadline{Clock::now() + timeout};
  sqlite3_progress_handler(db, 1000, &ProgressCallback, &deadline);
  const int ncols = sqlite3_column_count(raw);
  int rc;
  while ((rc = sqlite3_step(raw)) == SQLITE_ROW) {
    DbRow row;
    row.reserve(static_cast<std::size_t>(ncols));
    for (int c = 0; c < ncols; ++c) {
      switch (sqlite3_column_type(raw, c)) {
        case SQLITE_INTEGER:
          row.emplace_back(static_cast<std::int64_t>(sqlite3_column_int64(raw, c)));
          break;
        case SQLITE_FLOAT:
          row.emplace_back(sqlite3_column_double(raw, c));
          break;
        case SQLITE_NULL:
          row.emplace_back(std::monostate{});
          break;
        default: {
          const auto* bytes =
              static_cast<const char*>(sqlite3_column_blob(raw, c));
          const int len = sqlite3_column_bytes(raw, c);
          row.emplace_back(std::string(bytes ? bytes : "", static_cast<std::size_t>(len)));
        }
      }
    }
    result.rows.push_back(std::move(row));
  }
  sqlite3_progress_handler(db, 0, nullptr, nullptr);
  if (rc != SQLITE_DONE) {
    result.rows.clear();
    result.timed_out = deadline.hit;
    result.error = deadline.hit ? "timed out after " +
                                      std::to_string(timeout.count()) + " ms"
                                : sqlite3_errmsg(db);
    return result;
  }
  result.ok = true;
  return result;
}

std::optional<SchemaDef> ExecDb::StoredSchema() const {
  const QueryResult r = ExecuteNative(
      std::string("SELECT value FROM ") + kMetaTable + " WHERE key = 'schema'");
  if (!r.ok || r.rows.empty()) return std::nullopt;
  const auto* text = std::get_if<std::string>(&r.rows.front().front());
  if (!text) return std::nullopt;
  try {
    return SchemaFromJson(Json::parse(*text));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::string DbValueToString(const DbValue& v) {
  if (std::holds_alternative<std::monostate>(v)) return "NULL";
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&v)) return FormatDouble(*d);
  return std::get<std::string>(v);
}

void BuildExecDb(const SchemaDef& schema,
                 const std::map<std::string, std::filesystem::path>& table_files,
                 const std::filesystem::path& out) {
  ValidateSchema(schema);
  // Resolve files first so a missing table fails before any writing.
  std::vector<std::filesystem::path> files;
  for (const auto& table : schema.tables) {
    const std::filesystem::path* found = nullptr;
    for (const auto& [name, path] : table_files) {
      if (EqualsIgnoreCase(name, table.name)) found = &path;
    }
    if (!found) throw SchemaError("no CSV provided for table " + table.name);
    files.push_back(*found);
  }

  if (out.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(out.parent_path(), ec);
  }
  const auto tmp = TempSibling(out);
  std::filesystem::remove(tmp);
  sqlite3* raw = nullptr;
  if (sqlite3_open_v2(tmp.c_str(), &raw,
                      SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE,
                      nullptr) != SQLITE_OK) {
    std::string msg = raw ? sqlite3_errmsg(raw) : "out of memory";
    sqlite3_close_v2(raw);
    throw DbError("cannot create " + tmp.string() + ": " + msg);
  }
  std::unique_ptr<sqlite3, ConnCloser> db(raw);
  try {
    Exec(db.get(), "PRAGMA journal_mode=OFF");
    Exec(db.get(), "PRAGMA synchronous=OFF");
    Exec(db.get(), "BEGIN");
    for (std::size_t t = 0; t < schema.tables.size(); ++t) {
      const TableDef& table = schema.tables[t];
      std::string ddl = "CREATE TABLE " + QuoteSqlIdentifier(table.name) + " (";
      std::string insert = "INSERT INTO " + QuoteSqlIdentifier(table.name) + " VALUES (";
      for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0) {
          ddl += ", ";
          insert += ", ";
        }
        ddl += QuoteSqlIdentifier(table.columns[c].name);
        ddl += table.columns[c].attr == ColumnAttr::kNumber ? " NUMERIC" : " TEXT";
        insert += "?";
      }
      Exec(db.get(), ddl + ")");
      if (table.columns.empty()) continue;

      const std::vector<CsvRow> rows = ParseCsv(ReadFile(files[t]));
      if (rows.empty()) throw CsvError(1, 1, files[t].string() + ": missing header row");
      // CSV position -> schema column index.
      std::vector<std::size_t> column_of(rows[0].size());
      std::vector<bool> seen(table.columns.size(), false);
      for (std::size_t h = 0; h < rows[0].size(); ++h) {
        std::size_t idx = table.columns.size();
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
          if (EqualsIgnoreCase(NormalizeWhitespace(rows[0][h]), table.columns[c].name)) idx = c;
        }
        if (idx == table.columns.size() || seen[idx]) {
          throw CsvError(1, h + 1, files[t].string() + ": header '" + rows[0][h] +
                                       "' does not name a distinct column of " +
                                       table.name);
        }
        seen[idx] = true;
        column_of[h] = idx;
      }
      for (std::size_t c = 0; c < seen.size(); ++c) {
        if (!seen[c]) {
          throw CsvError(1, rows[0].size() + 1, files[t].string() + ": missing column " +
                                                    table.columns[c].name);
        }
      }

      Stmt stmt = Prepare(db.get(), insert + ")");
      for (std::size_t r = 1; r < rows.size(); ++r) {
        sqlite3_reset(stmt.get());
        sqlite3_clear_bindings(stmt.get());
        for (std::size_t h = 0; h < rows[r].size(); ++h) {
          const std::size_t c = column_of[h];
          const int slot = static_cast<int>(c) + 1;
          const std::string& cell = rows[r][h];
          if (cell.empty()) {
            sqlite3_bind_null(stmt.get(), slot);
            continue;
          }
          if (table.columns[c].attr != ColumnAttr::kNumber) {
            sqlite3_bind_text(stmt.get(), slot, cell.data(),
                              static_cast<int>(cell.size()), SQLITE_TRANSIENT);
            continue;
          }
          DbValue v;
          if (!ParseNumber(cell, &v)) {
            throw TypeError(files[t].string() + ": row " + std::to_string(r + 1) +
                            ", column " + table.columns[c].name +
                            ": non-numeric value '" + cell + "' in number column");
          }
          if (const auto* i = std::get_if<std::int64_t>(&v)) {
            sqlite3_bind_int64(stmt.get(), slot, *i);
          } else if (const auto* d = std::get_if<double>(&v)) {
            sqlite3_bind_double(stmt.get(), slot, *d);
          } else {
            sqlite3_bind_null(stmt.get(), slot);
          }
        }
        if (sqlite3_step(stmt.get()) != SQLITE_DONE) {
          throw DbError(std::string("insert failed: ") + sqlite3_errmsg(db.get()));
        }
      }
    }
    Exec(db.get(), std::string("CREATE TABLE ") + kMetaTable +
                       " (key TEXT PRIMARY KEY, value TEXT)");
    Stmt meta = Prepare(db.get(), std::string("INSERT INTO ") + kMetaTable +
                                      " VALUES ('schema', ?)");
    const std::string schema_json = SchemaToJson(schema).dump();
    sqlite3_bind_text(meta.get(), 1, schema_json.data(),
                      static_cast<int>(schema_json.size()), SQLITE_TRANSIENT);
    if (sqlite3_step(meta.get()) != SQLITE_DONE) {
      throw DbError(std::string("metadata insert failed: ") + sqlite3_errmsg(db.get()));
    }
    meta.reset();
    Exec(db.get(), "COMMIT");
    db.reset();
  } catch (...) {
    db.reset();
    std::filesystem::remove(tmp);
    throw;
  }
  std::error_code ec;
  std::filesystem::rename(tmp, out, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoError("cannot move database into " + out.string());
  }
}

}  // namespace medsql
