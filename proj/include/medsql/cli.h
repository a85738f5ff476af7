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

// The medsql command line: ingest, stats, split, linearize, augment,
// rerank, recover and eval.

#ifndef MEDSQL_CLI_H_
#define MEDSQL_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace medsql {

inline constexpr char kToolVersion[] = "0.1.0";

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitEnvironment = 3;

// Runs one command. argv[0] is the program name. Summaries go to `out`,
// diagnostics to `err`.
int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Convenience for tests: `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace medsql

#endif  // MEDSQL_CLI_H_
