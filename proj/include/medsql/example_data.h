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

// Synthetic data shaped like the MIMICSQL tables. Nothing here is real
// patient data; values are drawn from small fixed vocabularies.

#ifndef MEDSQL_EXAMPLE_DATA_H_
#define MEDSQL_EXAMPLE_DATA_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "medsql/augment.h"
#include "medsql/schema.h"

namespace medsql {

// DEMOGRAPHIC (23 columns), DIAGNOSES (5), PROCEDURES (5),
// PRESCRIPTIONS (7) and LAB (9).
SchemaDef ExampleSchema();

// Writes <dir>/<TABLE>.csv for every example table with `rows` data rows
// each. Rows in the other tables reference DEMOGRAPHIC subjects, so joins
// on SUBJECT_ID and HADM_ID produce matches. Identical arguments give
// byte-identical files.
std::map<std::string, std::filesystem::path> WriteExampleTables(
    const std::filesystem::path& dir, std::size_t rows, std::uint64_t seed);

// Question templates over ExampleSchema(). Some put a PROCEDURES,
// PRESCRIPTIONS or LAB table in FROM, others only join them, and none do
// both, so instantiations can always be split without conflicts.
std::vector<QuestionTemplate> ExampleTemplates();

}  // namespace medsql

#endif  // MEDSQL_EXAMPLE_DATA_H_
