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

// Writes a synthetic clinical database and matching files for trying the
// toolkit without access-controlled data:
//
//   <out>/schema.json       example schema
//   <out>/tables/*.csv      one CSV per table
//   <out>/templates.json    question templates over the schema
//
// The tables are random but reproducible from --rows and --seed.

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "medsql/augment.h"
#include "medsql/errors.h"
#include "medsql/example_data.h"
#include "medsql/file_util.h"
#include "medsql/schema.h"

int main(int argc, char** argv) {
  CLI::App app{"Write the example schema, tables and templates", "make_fixture"};
  std::string out;
  std::size_t rows = 100;
  std::uint64_t seed = 2024;
  app.add_option("--out,-o", out, "Output directory")->required();
  app.add_option("--rows", rows, "Rows per table")->capture_default_str();
  app.add_option("--seed", seed, "Generator seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    namespace fs = std::filesystem;
    fs::create_directories(fs::path(out) / "tables");
    medsql::SaveSchema(fs::path(out) / "schema.json", medsql::ExampleSchema());
    medsql::WriteExampleTables(fs::path(out) / "tables", rows, seed);
    medsql::WriteFileAtomic(fs::path(out) / "templates.json",
                            medsql::TemplatesToJson(medsql::ExampleTemplates()).dump(2) + "\n");
  } catch (const std::exception& e) {
    std::cerr << "make_fixture: " << e.what() << "\n";
    return 3;
  }
  std::cout << "wrote " << out << "\n";
  return 0;
}
