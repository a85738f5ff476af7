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

#include "medsql/csv.h"

#include <algorithm>

#include "medsql/errors.h"

namespace medsql {

std::vector<CsvRow> ParseCsv(std::string_view text) {
  std::vector<CsvRow> rows;
  CsvRow row;
  std::string field;
  std::size_t i = 0;
  const std::size_t n = text.size();
  // Strip a UTF-8 byte order mark.
  if (text.substr(0, 3) == "\xEF\xBB\xBF") i = 3;

  auto end_record = [&] {
    row.push_back(std::move(field));
    field.clear();
    const std::size_t record = rows.size() + 1;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw CsvError(record, std::min(row.size(), rows.front().size()) + 1,
                     "expected " + std::to_string(rows.front().size()) +
                         " fields, found " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
    row.clear();
  };

  while (i < n) {
    const char c = text[i];
    if (c == '"' && field.empty()) {
      const std::size_t record = rows.size() + 1;
      const std::size_t column = row.size() + 1;
      ++i;
      bool closed = false;
      while (i < n) {
        if (text[i] == '"') {
          if (i + 1 < n && text[i + 1] == '"') {
            field += '"';
            i += 2;
            continue;
          }
          ++i;
          closed = true;
          break;
        }
        field += text[i++];
      }
      if (!closed) throw CsvError(record, column, "unterminated quoted field");
      if (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
        throw CsvError(record, column, "text after closing quote");
      }
      continue;
    }
    if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      ++i;
    } else if (c == '\r' || c == '\n') {
      end_record();
      if (c == '\r' && i + 1 < n && text[i + 1] == '\n') ++i;
      ++i;
    } else if (c == '"') {
      throw CsvError(rows.size() + 1, row.size() + 1,
                     "quote inside unquoted field");
    } else {
      field += c;
      ++i;
    }
  }
  if (!field.empty() || !row.empty()) end_record();
  return rows;
}

std::string FormatCsvRow(const CsvRow& row) {
  std::string out;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i > 0) out += ',';
    const std::string& f = row[i];
    if (f.find_first_of(",\"\r\n") == std::string::npos) {
      out += f;
      continue;
    }
    out += '"';
    for (char c : f) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
  }
  out += "\r\n";
  return out;
}

}  // namespace medsql
