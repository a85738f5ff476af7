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

#ifndef MEDSQL_METRICS_H_
#define MEDSQL_METRICS_H_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "medsql/corpus.h"
#include "medsql/exec_db.h"
#include "medsql/json.h"
#include "medsql/predictions.h"
#include "medsql/sql_query.h"

namespace medsql {

// Relative tolerance for numeric values in result comparison.
inline constexpr double kNumericTolerance = 1e-9;

struct LfOutcome {
  bool lf_match = false;
  bool gold_error = false;  // gold has an unterminated literal
  bool pred_error = false;
};

// Token-sequence equality under TokenizeSql. Order-sensitive.
LfOutcome LogicFormMatch(std::string_view gold, std::string_view pred);

// Numbers (integer or real) match within kNumericTolerance relative; text
// matches byte for byte; NULL only matches NULL.
bool ValuesEqual(const DbValue& a, const DbValue& b);

// Multiset equality of rows; row order is ignored, value order within a
// row is not.
bool ResultsEqual(const std::vector<DbRow>& a, const std::vector<DbRow>& b);

struct ExOutcome {
  bool ex_match = false;
  bool gold_error = false;
  bool pred_error = false;
};

ExOutcome ExecutionMatch(std::string_view gold, std::string_view pred,
                         const ExecDb& db,
                         std::chrono::milliseconds timeout = kDefaultQueryTimeout);

struct ComponentFlags {
  bool agg_op = false;
  bool agg_col = false;
  bool table_joins = false;
  bool cond_col_op = false;
  bool cond_val = false;
};

// Each component compared as a multiset:
//   agg_op       aggregation (with DISTINCT) of every SELECT item
//   agg_col      columns of the SELECT items
//   table_joins  FROM table plus every (JOIN table, ON column pair)
//   cond_col_op  (column, operator) of every condition
//   cond_val     literal of every condition
// Unqualified columns are resolved to the FROM table; identifiers compare
// case-insensitively, literals exactly.
ComponentFlags ComponentBreakdown(const SqlQuery& gold, const SqlQuery& pred);
// All flags false when either string fails to parse.
ComponentFlags ComponentBreakdown(std::string_view gold, std::string_view pred);

struct SampleResult {
  std::string id;
  bool lf_match = false;
  bool ex_match = false;
  bool gold_error = false;
  bool pred_error = false;
  bool missing = false;
  std::optional<ComponentFlags> components;
};

struct ComponentAccuracy {
  double agg_op = 0;
  double agg_col = 0;
  double table_joins = 0;
  double cond_col_op = 0;
  double cond_val = 0;
};

struct EvalReport {
  std::size_t n = 0;
  std::size_t n_lf = 0;
  std::size_t n_ex = 0;
  std::size_t n_gold_error = 0;
  std::size_t n_pred_error = 0;
  std::size_t n_missing = 0;
  double acc_lf = 0;
  double acc_ex = 0;
  std::vector<SampleResult> per_sample;  // split order
  std::optional<ComponentAccuracy> breakdown;
};

struct EvalOptions {
  int jobs = 1;
  // Missing predictions raise MissingPrediction instead of scoring zero.
  bool strict = false;
  bool breakdown = false;
  std::chrono::milliseconds timeout = kDefaultQueryTimeout;
};

// Scores `preds` against `split` on the database at `db_path`; each worker
// opens its own connection. Predictions for ids outside the split are
// ignored. Throws EmptyCorpus, MissingPrediction (strict) or DbError.
EvalReport Evaluate(const Corpus& split, const PredictionFile& preds,
                    const std::filesystem::path& db_path,
                    const EvalOptions& options = {});

// Recomputes the counts and accuracies from per_sample.
void Summarize(EvalReport* report);

Json EvalReportToJson(const EvalReport& report);

}  // namespace medsql

#endif  // MEDSQL_METRICS_H_
