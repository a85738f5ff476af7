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

// Exception hierarchy shared by every medsql module.
//
// Two roots matter to callers: DataError (the input is wrong; the CLI exits
// with 2) and EnvironmentError (a file, database or endpoint is unusable; the
// CLI exits with 3).

#ifndef MEDSQL_ERRORS_H_
#define MEDSQL_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace medsql {

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EnvironmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// SQL front end.

class SqlError : public DataError {
 public:
  SqlError(const std::string& what, std::size_t offset)
      : DataError(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class ParseError : public SqlError {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected,
             const std::string& found);
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::vector<std::string> expected_;
};

class UnsupportedSyntax : public SqlError {
 public:
  UnsupportedSyntax(std::size_t offset, const std::string& construct);
};

class UnterminatedLiteral : public SqlError {
 public:
  explicit UnterminatedLiteral(std::size_t offset);
};

// Dataset handling.

class IoError : public EnvironmentError {
 public:
  using EnvironmentError::EnvironmentError;
};

class DbError : public EnvironmentError {
 public:
  using EnvironmentError::EnvironmentError;
};

class RecordError : public DataError {
 public:
  RecordError(std::size_t line, const std::string& cause);
  std::size_t line() const { return line_; }
  const std::string& cause() const { return cause_; }

 private:
  std::size_t line_;
  std::string cause_;
};

class SchemaError : public DataError {
 public:
  using DataError::DataError;
};

class CsvError : public DataError {
 public:
  CsvError(std::size_t row, std::size_t column, const std::string& detail);
  std::size_t row() const { return row_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

class TypeError : public DataError {
 public:
  using DataError::DataError;
};

class EmptyCorpus : public DataError {
 public:
  EmptyCorpus() : DataError("corpus is empty") {}
};

class EvalPoolTooSmall : public DataError {
 public:
  EvalPoolTooSmall(std::size_t pool_size, std::size_t test_size);
};

class MissingPrediction : public DataError {
 public:
  explicit MissingPrediction(std::vector<std::string> ids);
  const std::vector<std::string>& ids() const { return ids_; }

 private:
  std::vector<std::string> ids_;
};

class UnknownColumn : public DataError {
 public:
  using DataError::DataError;
};

class EmptyQuestion : public DataError {
 public:
  EmptyQuestion() : DataError("question is empty") {}
};

class ReservedToken : public DataError {
 public:
  using DataError::DataError;
};

// Augmentation.

class InvalidPivot : public DataError {
 public:
  using DataError::DataError;
};

class TranslateError : public EnvironmentError {
 public:
  TranslateError(int status, const std::string& detail);
  int status() const { return status_; }

 private:
  int status_;
};

class UnboundSlot : public DataError {
 public:
  using DataError::DataError;
};

class EmptyValueSet : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace medsql

#endif  // MEDSQL_ERRORS_H_
