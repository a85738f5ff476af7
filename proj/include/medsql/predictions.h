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

// Prediction files, one JSON object per line:
//
//   {"id": "...", "sql": "..."}                                single best
//   {"id": "...", "candidates": [{"sql": "...", "score": -1.2}, ...]}  beam
//
// Other fields are carried through unchanged.

#ifndef MEDSQL_PREDICTIONS_H_
#define MEDSQL_PREDICTIONS_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "medsql/json.h"

namespace medsql {

struct Candidate {
  std::string sql;
  double score = 0;
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct Prediction {
  std::string id;
  std::optional<std::string> sql;
  // Sorted by descending score on load; equal scores keep file order.
  std::vector<Candidate> candidates;
  Json extra = Json::object();

  // The single best query: `sql` if present, else the top candidate.
  const std::string& Best() const;
  friend bool operator==(const Prediction&, const Prediction&) = default;
};

using PredictionFile = std::vector<Prediction>;

// Throws RecordError (1-based line) for malformed records, empty SQL,
// records with neither "sql" nor a non-empty "candidates" list, and
// duplicate ids.
PredictionFile ParsePredictions(std::string_view contents);
PredictionFile LoadPredictions(const std::filesystem::path& path);

std::string FormatPredictions(const PredictionFile& preds);
void SavePredictions(const std::filesystem::path& path,
                     const PredictionFile& preds);

// Stable sort by descending score.
void SortCandidates(std::vector<Candidate>* candidates);

}  // namespace medsql

#endif  // MEDSQL_PREDICTIONS_H_
