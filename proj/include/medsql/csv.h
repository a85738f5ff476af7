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

#ifndef MEDSQL_CSV_H_
#define MEDSQL_CSV_H_

#include <string>
#include <string_view>
#include <vector>

namespace medsql {

using CsvRow = std::vector<std::string>;

// RFC 4180: comma-separated, optional double-quoted fields with "" escapes,
// CRLF or LF record ends, line breaks allowed inside quoted fields. Every
// record must have as many fields as the first. Throws CsvError with
// 1-based record and field numbers.
std::vector<CsvRow> ParseCsv(std::string_view text);

std::string FormatCsvRow(const CsvRow& row);

}  // namespace medsql

#endif  // MEDSQL_CSV_H_
