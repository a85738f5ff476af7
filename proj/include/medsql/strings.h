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

#ifndef MEDSQL_STRINGS_H_
#define MEDSQL_STRINGS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace medsql {

// ASCII-only case folding; bytes >= 0x80 pass through untouched.
std::string AsciiLower(std::string_view s);
std::string AsciiUpper(std::string_view s);
bool EqualsIgnoreCase(std::string_view a, std::string_view b);

bool IsSpace(char c);

// Splits on runs of ASCII whitespace, dropping empty pieces.
std::vector<std::string> SplitWhitespace(std::string_view s);

// Collapses whitespace runs to one space and trims both ends.
std::string NormalizeWhitespace(std::string_view s);

std::vector<std::string> SplitOn(std::string_view s, char sep);

std::string Join(const std::vector<std::string>& parts, std::string_view sep);

// Decodes UTF-8 into code points. Malformed bytes decode as themselves.
std::vector<char32_t> DecodeUtf8(std::string_view s);

// 64-bit FNV-1a. Stable across platforms; used for ids and manifests.
std::uint64_t Fnv1a64(std::string_view data,
                      std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string Hex64(std::uint64_t v);

// Shortest decimal string that round-trips the double.
std::string FormatDouble(double v);

// Double-quoted SQL identifier with embedded quotes doubled.
std::string QuoteSqlIdentifier(std::string_view name);

}  // namespace medsql

#endif  // MEDSQL_STRINGS_H_
