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

#ifndef MEDSQL_FILE_UTIL_H_
#define MEDSQL_FILE_UTIL_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace medsql {

// Throws IoError when the file cannot be read.
std::string ReadFile(const std::filesystem::path& path);

// Writes through a sibling temporary file and renames it into place, so
// readers never observe a partial file.
void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view contents);

// Sibling path used for atomic replacement of `path`.
std::filesystem::path TempSibling(const std::filesystem::path& path);

}  // namespace medsql

#endif  // MEDSQL_FILE_UTIL_H_
