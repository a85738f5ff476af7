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

#include "medsql/errors.h"

#include <utility>

namespace medsql {
namespace {

std::string JoinExpected(const std::vector<std::string>& expected) {
  std::string out;
  for (const auto& e : expected) {
    if (!out.empty()) out += ", ";
    out += e;
  }
  return out;
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected,
                       const std::string& found)
    : SqlError("parse error at offset " + std::to_string(offset) +
                   ": expected one of {" + JoinExpected(expected) +
                   "}, found " + found,
               offset),
      expected_(std::move(expected)) {}

UnsupportedSyntax::UnsupportedSyntax(std::size_t offset,
                                     const std::string& construct)
    : SqlError("unsupported syntax at offset " + std::to_string(offset) +
                   ": " + construct,
               offset) {}

UnterminatedLiteral::UnterminatedLiteral(std::size_t offset)
    : SqlError("unterminated string literal starting at offset " +
                   std::to_string(offset),
               offset) {}

RecordError::RecordError(std::size_t line, const std::string& cause)
    : DataError("record error on line " + std::to_string(line) + ": " + cause),
      line_(line),
      cause_(cause) {}

CsvError::CsvError(std::size_t row, std::size_t column,
                   const std::string& detail)
    : DataError("csv error at row " + std::to_string(row) + ", column " +
                std::to_string(column) + ": " + detail),
      row_(row),
      column_(column) {}

EvalPoolTooSmall::EvalPoolTooSmall(std::size_t pool_size,
                                   std::size_t test_size)
    : DataError("evaluation pool has " + std::to_string(pool_size) +
                " samples, fewer than the requested test size " +
                std::to_string(test_size)) {}

MissingPrediction::MissingPrediction(std::vector<std::string> ids)
    : DataError("missing predictions for " + std::to_string(ids.size()) +
                " sample(s)" + (ids.empty() ? "" : ", first: " + ids.front())),
      ids_(std::move(ids)) {}

TranslateError::TranslateError(int status, const std::string& detail)
    : EnvironmentError("translation failed (status " + std::to_string(status) +
                       "): " + detail),
      status_(status) {}

}  // namespace medsql
