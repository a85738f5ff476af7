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

// Condition value recovery: replace predicted WHERE literals with the most
// similar stored value, scored by ROUGE-L F1 at word and character level.

#ifndef MEDSQL_RECOVERY_H_
#define MEDSQL_RECOVERY_H_

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "medsql/predictions.h"
#include "medsql/value_lookup.h"

namespace medsql {

// Value sets larger than this are prefiltered by default.
inline constexpr std::size_t kPrefilterThreshold = 50000;

// Longest common subsequence length, O(|a|·|b|) time, O(min) space.
template <typename T>
std::size_t LcsLength(const std::vector<T>& a, const std::vector<T>& b) {
  const std::vector<T>& outer = a.size() >= b.size() ? a : b;
  const std::vector<T>& inner = a.size() >= b.size() ? b : a;
  std::vector<std::size_t> row(inner.size() + 1, 0);
  for (const T& x : outer) {
    std::size_t diag = 0;  // row[j - 1] of the previous outer element
    for (std::size_t j = 1; j <= inner.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = x == inner[j - 1] ? diag + 1 : std::max(row[j], row[j - 1]);
      diag = up;
    }
  }
  return row[inner.size()];
}

// F1 of P = L/|candidate| and R = L/|reference|; 0 when either is empty or
// nothing is shared.
template <typename T>
double RougeLF1(const std::vector<T>& candidate, const std::vector<T>& reference) {
  const std::size_t l = LcsLength(candidate, reference);
  if (l == 0) return 0.0;
  // 2PR/(P+R) simplifies to 2L/(|c|+|r|).
  return 2.0 * static_cast<double>(l) /
         static_cast<double>(candidate.size() + reference.size());
}

struct SimilarityScore {
  double word_f = 0;
  double char_f = 0;
  double combined = 0;  // (word_f + char_f) / 2
};

// Case-insensitive (ASCII folding). Words are whitespace-separated tokens;
// characters are Unicode code points.
SimilarityScore Similarity(std::string_view pred_value, std::string_view db_value);

struct RecoveryOptions {
  // Skip scoring values whose length-based upper bound cannot beat the best
  // score so far. Applied above kPrefilterThreshold values; the result is
  // the same as without it.
  bool prefilter = true;
  std::size_t prefilter_threshold = kPrefilterThreshold;
};

// Most similar member of `values` (sorted, distinct). An exact member is
// returned as is; ties go to the smallest value bytewise. Throws
// EmptyValueSet for an empty set.
std::string RecoverFromValues(std::string_view pred_value,
                              const std::vector<std::string>& values,
                              const RecoveryOptions& options = {});

// Throws UnknownColumn when the column is missing from `lookup` or has no
// values.
std::string RecoverValue(std::string_view pred_value, std::string_view table,
                         std::string_view column, const ValueLookup& lookup,
                         const RecoveryOptions& options = {});

struct ValueChange {
  std::size_t condition = 0;  // index into the WHERE conditions
  std::string column;         // "TABLE.COLUMN"
  std::string from;
  std::string to;
};

struct RecoveredQuery {
  std::string sql;
  bool parse_error = false;  // input returned unchanged
  std::vector<ValueChange> changes;
  std::vector<std::string> unknown_columns;
};

// Rewrites every text literal compared (not with LIKE) against a text
// column. Unqualified columns resolve to the FROM table, else to the only
// joined table that has them. Output is canonical SQL.
RecoveredQuery RecoverQuery(std::string_view pred_sql, const ValueLookup& lookup,
                            const RecoveryOptions& options = {});

struct RecoverFileResult {
  PredictionFile predictions;
  std::size_t changed_values = 0;
  std::size_t parse_errors = 0;
};

// Applies RecoverQuery to the "sql" and to every candidate of each record.
// Records gain "recovery": {"changes", "unknown_columns", "parse_error"}
// describing the "sql" field (or the top candidate for beam-only records).
RecoverFileResult RecoverFile(const PredictionFile& preds,
                              const ValueLookup& lookup,
                              const RecoveryOptions& options = {}, int jobs = 1);

}  // namespace medsql

#endif  // MEDSQL_RECOVERY_H_
