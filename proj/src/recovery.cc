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

#include "medsql/recovery.h"

#include <algorithm>
#include <numeric>

#include "medsql/errors.h"
#include "medsql/parallel.h"
#include "medsql/sql.h"
#include "medsql/strings.h"

namespace medsql {
namespace {

struct Folded {
  std::vector<std::string> words;
  std::vector<char32_t> chars;
};

Folded Fold(std::string_view s) {
  const std::string lower = AsciiLower(s);
  return {SplitWhitespace(lower), DecodeUtf8(lower)};
}

// The combined score is Lw/Sw + Lc/Sc, where L is an LCS length and S the
// summed lengths at one granularity. Kept as an exact fraction so that ties
// are real ties.
struct Score {
  __int128 num = 0;
  __int128 den = 1;

  static Score Of(std::size_t lw, std::size_t sw, std::size_t lc, std::size_t sc) {
    const __int128 wn = lw == 0 ? 0 : lw, wd = lw == 0 ? 1 : sw;
    const __int128 cn = lc == 0 ? 0 : lc, cd = lc == 0 ? 1 : sc;
    return {wn * cd + cn * wd, wd * cd};
  }
  friend bool operator<(const Score& a, const Score& b) {
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator==(const Score& a, const Score& b) {
    return a.num * b.den == b.num * a.den;
  }
};

Score ExactScore(const Folded& pred, const Folded& value) {
  return Score::Of(LcsLength(pred.words, value.words),
                   pred.words.size() + value.words.size(),
                   LcsLength(pred.chars, value.chars),
                   pred.chars.size() + value.chars.size());
}

// Best possible score given only the lengths: LCS ≤ the shorter length.
Score UpperBound(const Folded& pred, std::size_t words, std::size_t chars) {
  return Score::Of(std::min(pred.words.size(), words), pred.words.size() + words,
                   std::min(pred.chars.size(), chars), pred.chars.size() + chars);
}

struct Best {
  Score score;
  const std::string* value = nullptr;

  void Offer(const Score& s, const std::string& v) {
    if (!value || score < s || (s == score && v < *value)) {
      score = s;
      value = &v;
    }
  }
};

}  // namespace

SimilarityScore Similarity(std::string_view pred_value, std::string_view db_value) {
  const Folded a = Fold(pred_value), b = Fold(db_value);
  SimilarityScore s;
  s.word_f = RougeLF1(a.words, b.words);
  s.char_f = RougeLF1(a.chars, b.chars);
  s.combined = (s.word_f + s.char_f) / 2.0;
  return s;
}

std::string RecoverFromValues(std::string_view pred_value,
                              const std::vector<std::string>& values,
                              const RecoveryOptions& options) {
  if (values.empty()) throw EmptyValueSet("no values to recover from");
  if (std::find(values.begin(), values.end(), pred_value) != values.end()) {
    return std::string(pred_value);
  }
  const Folded pred = Fold(pred_value);
  Best best;
  if (!options.prefilter || values.size() <= options.prefilter_threshold) {
    for (const std::string& v : values) best.Offer(ExactScore(pred, Fold(v)), v);
    return *best.value;
  }

  std::vector<Score> bounds(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    // ASCII folding preserves both lengths, so the raw value can be measured.
    bounds[i] = UpperBound(pred, SplitWhitespace(values[i]).size(),
                           DecodeUtf8(values[i]).size());
  }
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return bounds[b] < bounds[a]; });
  for (std::size_t i : order) {
    // A bound equal to the best can still win the tie-break, so only a
    // strictly smaller bound ends the scan.
    if (best.value && bounds[i] < best.score) break;
    best.Offer(ExactScore(pred, Fold(values[i])), values[i]);
  }
  return *best.value;
}

std::string RecoverValue(std::string_view pred_value, std::string_view table,
                         std::string_view column, const ValueLookup& lookup,
                         const RecoveryOptions& options) {
  const ValueSet* set = lookup.Find(table, column);
  if (!set || set->values.empty()) {
    throw UnknownColumn("no values for column " + std::string(table) + "." +
                        std::string(column));
  }
  return RecoverFromValues(pred_value, set->values, options);
}

RecoveredQuery RecoverQuery(std::string_view pred_sql, const ValueLookup& lookup,
                            const RecoveryOptions& options) {
  RecoveredQuery out;
  SqlQuery q;
  try {
    q = ParseSql(pred_sql);
  } catch (const SqlError&) {
    out.sql = std::string(pred_sql);
    out.parse_error = true;
    return out;
  }
  for (std::size_t i = 0; i < q.conditions.size(); ++i) {
    Condition& c = q.conditions[i];
    if (c.value.kind != Literal::Kind::kText || c.op == CompareOp::kLike) continue;
    const ValueSet* set = nullptr;
    if (!c.column.table.empty()) {
      set = lookup.Find(c.column.table, c.column.column);
    } else {
      set = lookup.Find(q.main_table, c.column.column);
      if (!set) {
        std::vector<const ValueSet*> found;
        for (const JoinClause& j : q.joins) {
          if (const ValueSet* s = lookup.Find(j.table, c.column.column)) found.push_back(s);
        }
        if (found.size() == 1) set = found.front();
      }
    }
    const std::string name =
        c.column.table.empty() ? c.column.column : c.column.table + "." + c.column.column;
    if (!set || set->values.empty()) {
      out.unknown_columns.push_back(name);
      continue;
    }
    if (set->attr != ColumnAttr::kText) continue;
    std::string recovered = RecoverFromValues(c.value.value, set->values, options);
    if (recovered != c.value.value) {
      out.changes.push_back({i, set->table + "." + set->column, c.value.value, recovered});
      c.value.value = std::move(recovered);
    }
  }
  out.sql = SerializeSql(q);
  return out;
}

RecoverFileResult RecoverFile(const PredictionFile& preds, const ValueLookup& lookup,
                              const RecoveryOptions& options, int jobs) {
  RecoverFileResult out;
  out.predictions = preds;
  std::vector<RecoveredQuery> primary(preds.size());
  ParallelFor(
      preds.size(), jobs, [] { return 0; },
      [&](int, std::size_t i) {
        Prediction& p = out.predictions[i];
        for (Candidate& c : p.candidates) c.sql = RecoverQuery(c.sql, lookup, options).sql;
        primary[i] = RecoverQuery(preds[i].Best(), lookup, options);
        if (p.sql) p.sql = primary[i].sql;
      });
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const RecoveredQuery& r = primary[i];
    Json changes = Json::array();
    for (const ValueChange& c : r.changes) {
      changes.push_back({{"condition", c.condition},
                         {"column", c.column},
                         {"from", c.from},
                         {"to", c.to}});
    }
    out.predictions[i].extra["recovery"] = {{"changes", std::move(changes)},
                                            {"unknown_columns", r.unknown_columns},
                                            {"parse_error", r.parse_error}};
    out.changed_values += r.changes.size();
    out.parse_errors += r.parse_error;
  }
  return out;
}

}  // namespace medsql
