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

#include "medsql/metrics.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "medsql/errors.h"
#include "medsql/parallel.h"
#include "medsql/sql.h"
#include "medsql/strings.h"

namespace medsql {
namespace {

// Above this many rows the fallback matching in ResultsEqual is skipped.
constexpr std::size_t kMaxMatchingRows = 4096;

bool IsNumber(const DbValue& v) {
  return std::holds_alternative<std::int64_t>(v) || std::holds_alternative<double>(v);
}

long double AsNumber(const DbValue& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<long double>(*i);
  return static_cast<long double>(std::get<double>(v));
}

int Rank(const DbValue& v) {
  if (std::holds_alternative<std::monostate>(v)) return 0;
  if (IsNumber(v)) return 1;
  return 2;
}

// Total order used to line rows up before comparing them.
bool ValueLess(const DbValue& a, const DbValue& b) {
  const int ra = Rank(a), rb = Rank(b);
  if (ra != rb) return ra < rb;
  if (ra == 1) return AsNumber(a) < AsNumber(b);
  if (ra == 2) return std::get<std::string>(a) < std::get<std::string>(b);
  return false;
}

bool RowLess(const DbRow& a, const DbRow& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      ValueLess);
}

bool RowsEqual(const DbRow& a, const DbRow& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(), ValuesEqual);
}

std::string ResolveColumn(const ColumnRef& c, const SqlQuery& q) {
  return AsciiLower(c.table.empty() ? q.main_table : c.table) + "." +
         AsciiLower(c.column);
}

std::vector<std::string> Sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<std::string> AggOps(const SqlQuery& q) {
  std::vector<std::string> out;
  for (const SelectItem& s : q.select_items) {
    out.push_back(std::string(AggOpName(s.agg)) + (s.distinct ? " DISTINCT" : ""));
  }
  return Sorted(std::move(out));
}

std::vector<std::string> AggCols(const SqlQuery& q) {
  std::vector<std::string> out;
  for (const SelectItem& s : q.select_items) {
    out.push_back(s.star ? "*" : ResolveColumn(s.column, q));
  }
  return Sorted(std::move(out));
}

std::vector<std::string> TableJoins(const SqlQuery& q) {
  std::vector<std::string> out = {"from " + AsciiLower(q.main_table)};
  for (const JoinClause& j : q.joins) {
    std::string a = ResolveColumn(j.left, q), b = ResolveColumn(j.right, q);
    if (b < a) std::swap(a, b);
    out.push_back("join " + AsciiLower(j.table) + " on " + a + " = " + b);
  }
  return Sorted(std::move(out));
}

std::vector<std::string> CondColOps(const SqlQuery& q) {
  std::vector<std::string> out;
  for (const Condition& c : q.conditions) {
    out.push_back(ResolveColumn(c.column, q) + " " +
                  std::string(CompareOpSymbol(c.op)));
  }
  return Sorted(std::move(out));
}

std::vector<std::string> CondVals(const SqlQuery& q) {
  std::vector<std::string> out;
  for (const Condition& c : q.conditions) {
    out.push_back((c.value.kind == Literal::Kind::kText ? "t:" : "n:") + c.value.value);
  }
  return Sorted(std::move(out));
}

}  // namespace

LfOutcome LogicFormMatch(std::string_view gold, std::string_view pred) {
  LfOutcome out;
  TokenSeq g, p;
  try {
    g = TokenizeSql(gold);
  } catch (const SqlError&) {
    out.gold_error = true;
  }
  try {
    p = TokenizeSql(pred);
  } catch (const SqlError&) {
    out.pred_error = true;
  }
  out.lf_match = !out.gold_error && !out.pred_error && g == p;
  return out;
}

bool ValuesEqual(const DbValue& a, const DbValue& b) {
  if (IsNumber(a) && IsNumber(b)) {
    const auto* ia = std::get_if<std::int64_t>(&a);
    const auto* ib = std::get_if<std::int64_t>(&b);
    if (ia && ib) return *ia == *ib;
    const long double x = AsNumber(a), y = AsNumber(b);
    if (x == y) return true;
    return std::fabs(x - y) <= kNumericTolerance * std::max(std::fabs(x), std::fabs(y));
  }
  if (a.index() != b.index()) return false;
  if (const auto* s = std::get_if<std::string>(&a)) return *s == std::get<std::string>(b);
  return true;  // both NULL
}

bool ResultsEqual(const std::vector<DbRow>& a, const std::vector<DbRow>& b) {
  if (a.size() != b.size()) return false;
  std::vector<DbRow> x = a, y = b;
  std::sort(x.begin(), x.end(), RowLess);
  std::sort(y.begin(), y.end(), RowLess);
  if (std::equal(x.begin(), x.end(), y.begin(), y.end(), RowsEqual)) return true;
  // Values within tolerance can sort into different positions; fall back to
  // matching rows one by one.
  if (x.size() > kMaxMatchingRows) return false;
  std::vector<bool> used(y.size(), false);
  for (const DbRow& row : x) {
    bool found = false;
    for (std::size_t j = 0; j < y.size() && !found; ++j) {
      if (!used[j] && RowsEqual(row, y[j])) used[j] = found = true;
    }
    if (!found) return false;
  }
  return true;
}

ExOutcome ExecutionMatch(std::string_view gold, std::string_view pred,
                         const ExecDb& db, std::chrono::milliseconds timeout) {
  const QueryResult g = db.Execute(gold, timeout);
  const QueryResult p = db.Execute(pred, timeout);
  ExOutcome out;
  out.gold_error = !g.ok;
  out.pred_error = !p.ok;
  out.ex_match = g.ok && p.ok && ResultsEqual(g.rows, p.rows);
  return out;
}

ComponentFlags ComponentBreakdown(const SqlQuery& gold, const SqlQuery& pred) {
  ComponentFlags f;
  f.agg_op = AggOps(gold) == AggOps(pred);
  f.agg_col = AggCols(gold) == AggCols(pred);
  f.table_joins = TableJoins(gold) == TableJoins(pred);
  f.cond_col_op = CondColOps(gold) == CondColOps(pred);
  f.cond_val = CondVals(gold) == CondVals(pred);
  return f;
}

ComponentFlags ComponentBreakdown(std::string_view gold, std::string_view pred) {
  try {
    return ComponentBreakdown(ParseSql(gold), ParseSql(pred));
  } catch (const SqlError&) {
    return {};
  }
}

void Summarize(EvalReport* report) {
  EvalReport& r = *report;
  r.n = r.per_sample.size();
  r.n_lf = r.n_ex = r.n_gold_error = r.n_pred_error = r.n_missing = 0;
  std::size_t agg_op = 0, agg_col = 0, table_joins = 0, cond_col_op = 0, cond_val = 0;
  bool any_components = false;
  for (const SampleResult& s : r.per_sample) {
    r.n_lf += s.lf_match;
    r.n_ex += s.ex_match;
    r.n_gold_error += s.gold_error;
    r.n_pred_error += s.pred_error;
    r.n_missing += s.missing;
    if (s.components) {
      any_components = true;
      agg_op += s.components->agg_op;
      agg_col += s.components->agg_col;
      table_joins += s.components->table_joins;
      cond_col_op += s.components->cond_col_op;
      cond_val += s.components->cond_val;
    }
  }
  auto frac = [&](std::size_t k) {
    return r.n == 0 ? 0.0 : static_cast<double>(k) / static_cast<double>(r.n);
  };
  r.acc_lf = frac(r.n_lf);
  r.acc_ex = frac(r.n_ex);
  if (any_components) {
    r.breakdown = ComponentAccuracy{frac(agg_op), frac(agg_col), frac(table_joins),
                                    frac(cond_col_op), frac(cond_val)};
  } else {
    r.breakdown.reset();
  }
}

EvalReport Evaluate(const Corpus& split, const PredictionFile& preds,
                    const std::filesystem::path& db_path,
                    const EvalOptions& options) {
  if (split.empty()) throw EmptyCorpus();
  std::unordered_map<std::string, const Prediction*> by_id;
  for (const Prediction& p : preds) by_id.emplace(p.id, &p);
  std::vector<const Prediction*> matched(split.size(), nullptr);
  std::vector<std::string> missing;
  for (std::size_t i = 0; i < split.size(); ++i) {
    auto it = by_id.find(split[i].id);
    if (it == by_id.end()) {
      missing.push_back(split[i].id);
    } else {
      matched[i] = it->second;
    }
  }
  if (options.strict && !missing.empty()) throw MissingPrediction(std::move(missing));

  EvalReport report;
  report.per_sample.resize(split.size());
  ParallelFor(
      split.size(), options.jobs, [&] { return ExecDb::Open(db_path); },
      [&](const ExecDb& db, std::size_t i) {
        SampleResult& s = report.per_sample[i];
        s.id = split[i].id;
        if (!matched[i]) {
          s.missing = true;
          if (options.breakdown) s.components = ComponentFlags{};
          return;
        }
        const std::string& gold = split[i].gold_sql;
        const std::string& pred = matched[i]->Best();
        const LfOutcome lf = LogicFormMatch(gold, pred);
        const ExOutcome ex = ExecutionMatch(gold, pred, db, options.timeout);
        s.lf_match = lf.lf_match;
        s.ex_match = ex.ex_match;
        s.gold_error = lf.gold_error || ex.gold_error;
        s.pred_error = lf.pred_error || ex.pred_error;
        if (options.breakdown) s.components = ComponentBreakdown(gold, pred);
      });
  Summarize(&report);
  return report;
}

Json EvalReportToJson(const EvalReport& report) {
  Json j = {
      {"format_version", kFormatVersion},
      {"n", report.n},
      {"acc_lf", report.acc_lf},
      {"acc_ex", report.acc_ex},
      {"n_lf_match", report.n_lf},
      {"n_ex_match", report.n_ex},
      {"n_gold_error", report.n_gold_error},
      {"n_pred_error", report.n_pred_error},
      {"n_missing", report.n_missing},
  };
  if (report.breakdown) {
    const ComponentAccuracy& b = *report.breakdown;
    j["breakdown"] = {{"agg_op", b.agg_op},
                      {"agg_col", b.agg_col},
                      {"table_joins", b.table_joins},
                      {"cond_col_op", b.cond_col_op},
                      {"cond_val", b.cond_val}};
  }
  Json per = Json::array();
  for (const SampleResult& s : report.per_sample) {
    Json row = {{"id", s.id},
                {"lf_match", s.lf_match},
                {"ex_match", s.ex_match},
                {"gold_error", s.gold_error},
                {"pred_error", s.pred_error},
                {"missing", s.missing}};
    if (s.components) {
      row["components"] = {{"agg_op", s.components->agg_op},
                           {"agg_col", s.components->agg_col},
                           {"table_joins", s.components->table_joins},
                           {"cond_col_op", s.components->cond_col_op},
                           {"cond_val", s.components->cond_val}};
    }
    per.push_back(std::move(row));
  }
  j["per_sample"] = std::move(per);
  return j;
}

}  // namespace medsql
