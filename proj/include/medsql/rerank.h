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

// Execution-guided selection: walk a beam from the best score down and keep
// the first candidate that runs.

#ifndef MEDSQL_RERANK_H_
#define MEDSQL_RERANK_H_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "medsql/exec_db.h"
#include "medsql/predictions.h"

namespace medsql {

struct RerankOptions {
  // Also require at least one result row.
  bool require_nonempty = false;
  std::chrono::milliseconds timeout = kDefaultQueryTimeout;
};

struct RerankResult {
  std::string chosen_sql;
  std::size_t chosen_rank = 0;  // 1-based, in descending-score order
  bool all_failed = false;
  std::size_t executions = 0;
};

// Candidates are tried in descending-score order (ties keep their order).
// When none qualifies the rank-1 candidate is returned with all_failed.
// Throws DataError for an empty candidate list.
RerankResult Rerank(const std::vector<Candidate>& candidates, const ExecDb& db,
                    const RerankOptions& options = {});

struct RerankFileResult {
  PredictionFile predictions;  // one {"id", "sql"} record per input record
  std::size_t executions = 0;
  std::size_t all_failed = 0;
};

// Reranks every record on its own connection per worker. Output records
// keep input order and extra fields, drop the beam, and gain
// "rerank": {"rank", "all_failed"}. Throws RecordError (1-based record
// index) for a record without candidates.
RerankFileResult RerankFile(const PredictionFile& preds,
                            const std::filesystem::path& db_path,
                            const RerankOptions& options = {}, int jobs = 1);

}  // namespace medsql

#endif  // MEDSQL_RERANK_H_
