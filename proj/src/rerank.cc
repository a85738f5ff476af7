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

#include "medsql/rerank.h"

#include "medsql/errors.h"
#include "medsql/parallel.h"

namespace medsql {

RerankResult Rerank(const std::vector<Candidate>& candidates, const ExecDb& db,
                    const RerankOptions& options) {
  if (candidates.empty()) throw DataError("empty candidate list");
  std::vector<Candidate> ordered = candidates;
  SortCandidates(&ordered);
  RerankResult result;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const QueryResult r = db.Execute(ordered[i].sql, options.timeout);
    ++result.executions;
    if (r.ok && (!options.require_nonempty || !r.rows.empty())) {
      result.chosen_sql = ordered[i].sql;
      result.chosen_rank = i + 1;
      return result;
    }
  }
  result.chosen_sql = ordered.front().sql;
  result.chosen_rank = 1;
  result.all_failed = true;
  return result;
}

RerankFileResult RerankFile(const PredictionFile& preds,
                            const std::filesystem::path& db_path,
                            const RerankOptions& options, int jobs) {
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i].candidates.empty()) {
      throw RecordError(i + 1, "record '" + preds[i].id + "' has no candidates");
    }
  }
  std::vector<RerankResult> results(preds.size());
  ParallelFor(
      preds.size(), jobs, [&] { return ExecDb::Open(db_path); },
      [&](const ExecDb& db, std::size_t i) {
        results[i] = Rerank(preds[i].candidates, db, options);
      });

  RerankFileResult out;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    Prediction p;
    p.id = preds[i].id;
    p.sql = results[i].chosen_sql;
    p.extra = preds[i].extra;
    p.extra["rerank"] = {{"rank", results[i].chosen_rank},
                         {"all_failed", results[i].all_failed}};
    out.predictions.push_back(std::move(p));
    out.executions += results[i].executions;
    out.all_failed += results[i].all_failed;
  }
  return out;
}

}  // namespace medsql
