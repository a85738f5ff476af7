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

#ifndef MEDSQL_JSON_H_
#define MEDSQL_JSON_H_

#include "json.hpp"

namespace medsql {

// Insertion-ordered so every structured output is byte-stable.
using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

}  // namespace medsql

#endif  // MEDSQL_JSON_H_
