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

#include <algorithm>
#include <cctype>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "medsql/errors.h"
#include "medsql/metrics.h"
#include "medsql/predictions.h"
#include "medsql/sql.h"
#include "testing/example_fixture.h"
#include "testing/oracles.h"

namespace medsql {
namespace {

using testing::OracleTokens;
using testing::SharedExample;

// Reference result comparison: rows rendered as tagged strings, sorted.
std::vector<std::string> OracleRows(const std::vector<DbRow>& rows) {
  std::vector<std::string> out;
  for (const DbRow& row : rows) {
    std::string r;
    for (const DbValue& v : row) {
      r += std::to_string(v.index()) + ":" + DbValueToString(v) + "\x1f";
    }
    out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool OracleEx(const ExecDb& db, const std::string& gold, const std::string& pred) {
  const QueryResult g = db.Execute(gold), p = db.Execute(pred);
  return g.ok && p.ok && OracleRows(g.rows) == OracleRows(p.rows);
}

TEST(LogicFormMatchTest, Examples) {
  EXPECT_TRUE(LogicFormMatch("SELECT A,B from TABLE", "SELECT A,B from TABLE").lf_match);
  EXPECT_FALSE(LogicFormMatch("SELECT A,B from TABLE", "SELECT B,A from TABLE").lf_match);
  const std::string a = "SELECT COUNT(*) FROM DEMOGRAPHIC WHERE DEMOGRAPHIC.AGE < 30";
  const std::string b = "select   count ( * )\nfrom demographic where demographic.age<30";
  EXPECT_EQ(OracleTokens(a), OracleTokens(b));
  EXPECT_TRUE(LogicFormMatch(a, b).lf_match);
}

TEST(LogicFormMatchTest, LiteralCaseMatters) {
  EXPECT_FALSE(LogicFormMatch("SELECT A FROM T WHERE B = \"x\"",
                              "SELECT A FROM T WHERE B = \"X\"").lf_match);
  EXPECT_TRUE(LogicFormMatch("SELECT A FROM T WHERE B = \"x\"",
                             "SELECT A FROM T WHERE B = 'x'").lf_match);
}

TEST(LogicFormMatchTest, UnterminatedPredIsError) {
  const LfOutcome r = LogicFormMatch("SELECT A FROM T", "SELECT A FROM T WHERE B = \"x");
  EXPECT_FALSE(r.lf_match);
  EXPECT_TRUE(r.pred_error);
  EXPECT_FALSE(r.gold_error);
}

TEST(ValuesEqualTest, ToleranceAndTypes) {
  EXPECT_TRUE(ValuesEqual(DbValue{1.0}, DbValue{1.0 + 1e-12}));
  EXPECT_FALSE(ValuesEqual(DbValue{1.0}, DbValue{1.0 + 1e-6}));
  EXPECT_TRUE(ValuesEqual(DbValue{std::int64_t{3}}, DbValue{3.0}));
  EXPECT_FALSE(ValuesEqual(DbValue{std::int64_t{3}}, DbValue{std::string("3")}));
  EXPECT_TRUE(ValuesEqual(DbValue{}, DbValue{}));
  EXPECT_FALSE(ValuesEqual(DbValue{}, DbValue{std::string()}));
  EXPECT_FALSE(ValuesEqual(DbValue{std::string("a")}, DbValue{std::string("A")}));
  EXPECT_FALSE(ValuesEqual(DbValue{std::int64_t{9007199254740993}},
                           DbValue{std::int64_t{9007199254740992}}));
}

TEST(ResultsEqualTest, MultisetSemantics) {
  const DbRow a = {std::int64_t{1}, std::string("x")};
  const DbRow b = {std::int64_t{2}, std::string("y")};
  EXPECT_TRUE(ResultsEqual({a, b, a}, {a, a, b}));
  EXPECT_FALSE(ResultsEqual({a, b, b}, {a, a, b}));
  EXPECT_FALSE(ResultsEqual({a}, {{std::string("x"), std::int64_t{1}}}));
  EXPECT_FALSE(ResultsEqual({a}, {a, a}));
}

TEST(ResultsEqualTest, NearEqualValuesThatSortApart) {
  const double lo = 1.0, hi = 1.0 + 1e-12;
  EXPECT_TRUE(ResultsEqual({{hi, std::string("a")}, {lo, std::string("b")}},
                           {{lo, std::string("a")}, {hi, std::string("b")}}));
}

TEST(ResultsEqualTest, AgreesWithStringOracleOnRandomRows) {
  std::mt19937_64 rng(17);
  auto value = [&]() -> DbValue {
    switch (rng() % 4) {
      case 0: return std::monostate{};
      case 1: return static_cast<std::int64_t>(rng() % 4);
      case 2: return static_cast<double>(rng() % 4) + 0.5;
      default: return std::string(1, static_cast<char>('a' + rng() % 3));
    }
  };
  for (int round = 0; round < 5000; ++round) {
    const std::size_t width = 1 + rng() % 2;
    std::vector<DbRow> x;
    for (std::size_t r = 0; r < rng() % 5; ++r) {
      DbRow row;
      for (std::size_t c = 0; c < width; ++c) row.push_back(value());
      x.push_back(row);
    }
    std::vector<DbRow> y = x;
    std::shuffle(y.begin(), y.end(), rng);
    if (!y.empty() && rng() % 2) y[rng() % y.size()][rng() % width] = value();
    EXPECT_EQ(ResultsEqual(x, y), OracleRows(x) == OracleRows(y));
    EXPECT_EQ(ResultsEqual(x, y), ResultsEqual(y, x));
  }
}

TEST(ExecutionMatchTest, Examples) {
  const ExecDb db = SharedExample().Open();
  const std::string gold =
      "SELECT COUNT(*) FROM DEMOGRAPHIC WHERE DEMOGRAPHIC.LANGUAGE = \"PORT\"";
  EXPECT_TRUE(ExecutionMatch(gold, gold, db).ex_match);

  const std::string pred =
      "SELECT COUNT(*) FROM DEMOGRAPHIC WHERE DEMOGRAPHIC.LANGUAGE = \"ZZZZ\"";
  const ExOutcome r = ExecutionMatch(gold, pred, db);
  EXPECT_EQ(r.ex_match, OracleEx(db, gold, pred));
  EXPECT_FALSE(r.gold_error);
  EXPECT_FALSE(r.pred_error);

  const ExOutcome bad = ExecutionMatch(
      gold, "SELECT COUNT(*) FROM DEMOGRAPHIC WHERE DEMOGRAPHIC.NOPE = \"x\"", db);
  EXPECT_TRUE(bad.pred_error);
  EXPECT_FALSE(bad.ex_match);
}

struct Pair {
  std::string gold;
  std::string pred;
};

std::vector<Pair> TenPairs() {
  const std::string by_id =
      " FROM DEMOGRAPHIC WHERE DEMOGRAPHIC.SUBJECT_ID = \"10000\"";
  return {
      {"SELECT COUNT(*) FROM LAB", "SELECT COUNT(*) FROM LAB"},
      {"SELECT DEMOGRAPHIC.NAME" + by_id, "SELECT DEMOGRAPHIC.NAME" + by_id},
      {"SELECT MAX(DEMOGRAPHIC.AGE) FROM DEMOGRAPHIC",
       "select max ( demographic.age )  from demographic"},
      {"SELECT COUNT(*) FROM DEMOGRAPHIC WHERE DEMOGRAPHIC.GENDER = \"M\" AND "
       "DEMOGRAPHIC.AGE > 40",
       "SELECT COUNT(*) FROM DEMOGRAPHIC WHERE DEMOGRAPHIC.AGE > 40 AND "
       "DEMOGRAPHIC.GENDER = \"M\""},
      {"SELECT COUNT(*) FROM DEMOGRAPHIC",
       "SELECT COUNT(DEMOGRAPHIC.SUBJECT_ID) FROM DEMOGRAPHIC"},
      {"SELECT DEMOGRAPHIC.AGE" + by_id, "SELECT DEMOGRAPHIC.WEIGHT" + by_id},
      {"SELECT DEMOGRAPHIC.SUBJECT_ID" + by_id,
       "SELECT DEMOGRAPHIC.SUBJECT_ID FROM DEMOGRAPHIC WHERE "
       "DEMOGRAPHIC.SUBJECT_ID = \"10001\""},
      {"SELECT COUNT(*) FROM LAB",
       "SELECT COUNT(*) FROM LAB WHERE LAB.SUBJECT_ID = \"none\""},
      {"SELECT COUNT(*) FROM LAB", "SELECT FROM LAB"},
      {"SELECT DEMOGRAPHIC.NAME, DEMOGRAPHIC.GENDER" + by_id,
       "SELECT DEMOGRAPHIC.GENDER, DEMOGRAPHIC.NAME" + by_id},
  };
}

Corpus AsCorpus(const std::vector<Pair>& pairs, PredictionFile* preds) {
  Corpus split;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string id = "q" + std::to_string(i);
    split.push_back({id, "question", std::nullopt, {}, pairs[i].gold});
    preds->push_back({id, pairs[i].pred, {}, Json::object()});
  }
  return split;
}

TEST(EvaluateTest, TenPairFixtureMatchesPerSampleOracle) {
  const auto& fx = SharedExample();
  const ExecDb db = fx.Open();
  const auto pairs = TenPairs();
  PredictionFile preds;
  const Corpus split = AsCorpus(pairs, &preds);
  std::size_t lf = 0, ex = 0;
  for (const Pair& p : pairs) {
    lf += OracleTokens(p.gold) == OracleTokens(p.pred);
    ex += OracleEx(db, p.gold, p.pred);
  }
  EXPECT_EQ(lf, 3u);
  EXPECT_EQ(ex, 5u);
  const EvalReport r = Evaluate(split, preds, fx.db_path);
  EXPECT_EQ(r.n, 10u);
  EXPECT_DOUBLE_EQ(r.acc_lf, 0.30);
  EXPECT_DOUBLE_EQ(r.acc_ex, 0.50);
  EXPECT_EQ(r.n_gold_error, 0u);
  EXPECT_EQ(r.n_pred_error, 2u);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    EXPECT_EQ(r.per_sample[i].lf_match,
              OracleTokens(pairs[i].gold) == OracleTokens(pairs[i].pred)) << i;
    EXPECT_EQ(r.per_sample[i].ex_match, OracleEx(db, pairs[i].gold, pairs[i].pred)) << i;
  }
}

TEST(EvaluateTest, NinetySixOfHundred) {
  const auto& fx = SharedExample();
  Corpus split;
  PredictionFile preds;
  for (int i = 0; i < 100; ++i) {
    const std::string id = "s" + std::to_string(i);
    const std::string gold = "SELECT COUNT(*) FROM DEMOGRAPHIC WHERE DEMOGRAPHIC.AGE > " +
                             std::to_string(i);
    split.push_back({id, "q", std::nullopt, {}, gold});
    preds.push_back({id, i < 96 ? gold : "SELECT COUNT(*) FROM NOWHERE", {}, Json::object()});
  }
  const EvalReport r = Evaluate(split, preds, fx.db_path);
  EXPECT_EQ(r.n_ex, 96u);
  EXPECT_DOUBLE_EQ(r.acc_ex, 0.96);
  EXPECT_EQ(r.acc_ex, 96.0 / 100.0);
}

TEST(EvaluateTest, IdentityPredictionsScorePerfect) {
  const auto& fx = SharedExample();
  PredictionFile preds;
  std::vector<Pair> pairs;
  for (const Pair& p : TenPairs()) pairs.push_back({p.gold, p.gold});
  const Corpus split = AsCorpus(pairs, &preds);
  const EvalReport r = Evaluate(split, preds, fx.db_path);
  EXPECT_EQ(r.acc_lf, 1.0);
  EXPECT_EQ(r.acc_ex, 1.0);
}

TEST(EvaluateTest, MissingPredictions) {
  const auto& fx = SharedExample();
  PredictionFile preds;
  const Corpus split = AsCorpus(TenPairs(), &preds);
  preds.erase(preds.begin() + 3);
  preds.push_back({"not-in-split", "SELECT COUNT(*) FROM LAB", {}, Json::object()});
  const EvalReport r = Evaluate(split, preds, fx.db_path);
  EXPECT_TRUE(r.per_sample[3].missing);
  EXPECT_FALSE(r.per_sample[3].lf_match);
  EXPECT_FALSE(r.per_sample[3].ex_match);
  EXPECT_EQ(r.n_ex, 4u);
  EvalOptions strict;
  strict.strict = true;
  try {
    Evaluate(split, preds, fx.db_path, strict);
    FAIL() << "expected MissingPrediction";
  } catch (const MissingPrediction& e) {
    EXPECT_EQ(e.ids(), std::vector<std::string>{"q3"});
  }
}

TEST(EvaluateTest, UnreachableDatabaseIsDbError) {
  PredictionFile preds;
  const Corpus split = AsCorpus(TenPairs(), &preds);
  EXPECT_THROW(Evaluate(split, preds, "/nonexistent/x.db"), DbError);
  EXPECT_THROW(Evaluate({}, preds, SharedExample().db_path), EmptyCorpus);
}

TEST(EvaluateTest, BeamRecordsScoreTheirTopCandidate) {
  const auto& fx = SharedExample();
  const Corpus split = {{"a", "q", std::nullopt, {}, "SELECT COUNT(*) FROM LAB"}};
  const PredictionFile preds = ParsePredictions(
      R"({"id":"a","candidates":[{"sql":"SELECT FROM","score":-3},)"
      R"({"sql":"SELECT COUNT(*) FROM LAB","score":-1}]})");
  EXPECT_EQ(Evaluate(split, preds, fx.db_path).acc_ex, 1.0);
}

// Generated (gold, pred) pairs with perturbations; used for the
// order/worker invariants below.
std::vector<Pair> PerturbedPairs(std::mt19937_64& rng, int n) {
  const std::vector<std::string> langs = {"ENGL", "PORT", "HAIT", "SPAN", "XXXX"};
  std::vector<Pair> out;
  for (int i = 0; i < n; ++i) {
    const std::string lang = langs[rng() % langs.size()];
    const std::string gold = "SELECT DEMOGRAPHIC.NAME, DEMOGRAPHIC.AGE FROM DEMOGRAPHIC "
                             "WHERE DEMOGRAPHIC.LANGUAGE = \"" + lang + "\"";
    std::string pred = gold;
    switch (rng() % 4) {
      case 1:
        pred = "SELECT DEMOGRAPHIC.NAME, DEMOGRAPHIC.AGE FROM DEMOGRAPHIC WHERE "
               "DEMOGRAPHIC.LANGUAGE = \"" + langs[rng() % langs.size()] + "\"";
        break;
      case 2:
        pred = "SELECT DEMOGRAPHIC.AGE, DEMOGRAPHIC.NAME FROM DEMOGRAPHIC WHERE "
               "DEMOGRAPHIC.LANGUAGE = \"" + lang + "\"";
        break;
      case 3:
        pred = "SELECT LAB.NAME, LAB.AGE FROM LAB WHERE LAB.LANGUAGE = \"" + lang + "\"";
        break;
    }
    out.push_back({gold, pred});
  }
  return out;
}

TEST(EvaluatePropertyTest, InvariantsOnPerturbedPairs) {
  const auto& fx = SharedExample();
  const ExecDb db = fx.Open();
  std::mt19937_64 rng(41);
  const auto pairs = PerturbedPairs(rng, 200);
  PredictionFile preds;
  const Corpus split = AsCorpus(pairs, &preds);
  EvalOptions opts;
  opts.breakdown = true;
  const EvalReport one = Evaluate(split, preds, fx.db_path, opts);
  opts.jobs = 8;
  const EvalReport eight = Evaluate(split, preds, fx.db_path, opts);
  EXPECT_EQ(EvalReportToJson(one).dump(), EvalReportToJson(eight).dump());

  std::size_t lf = 0, ex = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const SampleResult& s = one.per_sample[i];
    if (s.lf_match && !s.gold_error) EXPECT_TRUE(s.ex_match);
    EXPECT_EQ(s.ex_match, ExecutionMatch(pairs[i].pred, pairs[i].gold, db).ex_match);
    lf += s.lf_match;
    ex += s.ex_match;
  }
  EXPECT_EQ(one.acc_lf, static_cast<double>(lf) / 200.0);
  EXPECT_EQ(one.acc_ex, static_cast<double>(ex) / 200.0);

  // Permuting the split permutes per_sample and leaves the totals alone.
  Corpus shuffled = split;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  const EvalReport perm = Evaluate(shuffled, preds, fx.db_path);
  EXPECT_EQ(perm.acc_lf, one.acc_lf);
  EXPECT_EQ(perm.acc_ex, one.acc_ex);
}

TEST(ComponentBreakdownTest, Examples) {
  const std::string q =
      "SELECT COUNT(DISTINCT DEMOGRAPHIC.SUBJECT_ID) FROM DEMOGRAPHIC WHERE "
      "DEMOGRAPHIC.LANGUAGE = \"HAITIAN\" AND DEMOGRAPHIC.AGE < 40";
  auto all = [](const ComponentFlags& f) {
    return f.agg_op && f.agg_col && f.table_joins && f.cond_col_op && f.cond_val;
  };
  EXPECT_TRUE(all(ComponentBreakdown(q, q)));
  EXPECT_TRUE(all(ComponentBreakdown(
      q,
      "SELECT COUNT(DISTINCT DEMOGRAPHIC.SUBJECT_ID) FROM DEMOGRAPHIC WHERE "
      "DEMOGRAPHIC.AGE < 40 AND DEMOGRAPHIC.LANGUAGE = \"HAITIAN\"")));
  const ComponentFlags f = ComponentBreakdown(
      q,
      "SELECT COUNT(DISTINCT DEMOGRAPHIC.SUBJECT_ID) FROM DEMOGRAPHIC WHERE "
      "DEMOGRAPHIC.LANGUAGE = \"hait\" AND DEMOGRAPHIC.AGE < 40");
  EXPECT_TRUE(f.agg_op);
  EXPECT_TRUE(f.agg_col);
  EXPECT_TRUE(f.table_joins);
  EXPECT_TRUE(f.cond_col_op);
  EXPECT_FALSE(f.cond_val);
  EXPECT_FALSE(ComponentBreakdown(q, "SELECT").agg_op);
}

TEST(ComponentBreakdownTest, JoinsAndQualification) {
  const std::string a =
      "SELECT COUNT(*) FROM DEMOGRAPHIC INNER JOIN LAB ON DEMOGRAPHIC.HADM_ID = "
      "LAB.HADM_ID WHERE AGE > 3";
  const std::string b =
      "SELECT COUNT(*) FROM DEMOGRAPHIC INNER JOIN LAB ON LAB.HADM_ID = "
      "DEMOGRAPHIC.HADM_ID WHERE DEMOGRAPHIC.AGE > 3";
  const ComponentFlags f = ComponentBreakdown(a, b);
  EXPECT_TRUE(f.table_joins);
  EXPECT_TRUE(f.cond_col_op);
  EXPECT_FALSE(ComponentBreakdown(a, "SELECT COUNT(*) FROM LAB WHERE AGE > 3").table_joins);
}

TEST(PredictionsTest, ParseSortsBeamsStably) {
  const PredictionFile p = ParsePredictions(
      R"({"id":"a","candidates":[{"sql":"S1","score":-2},{"sql":"S2","score":-1},)"
      R"({"sql":"S3","score":-1}],"note":"kept"})"
      "\n\n"
      R"({"id":"b","sql":"SELECT 1"})");
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0].candidates[0].sql, "S2");
  EXPECT_EQ(p[0].candidates[1].sql, "S3");
  EXPECT_EQ(p[0].candidates[2].sql, "S1");
  EXPECT_EQ(p[0].extra["note"], "kept");
  EXPECT_EQ(ParsePredictions(FormatPredictions(p)), p);
}

TEST(PredictionsTest, RejectsBadRecords) {
  EXPECT_THROW(ParsePredictions(R"({"id":"a"})"), RecordError);
  EXPECT_THROW(ParsePredictions(R"({"id":"a","sql":"  "})"), RecordError);
  EXPECT_THROW(ParsePredictions(R"({"id":"a","candidates":[]})"), RecordError);
  try {
    ParsePredictions("{\"id\":\"a\",\"sql\":\"x\"}\n{\"id\":\"a\",\"sql\":\"y\"}");
    FAIL();
  } catch (const RecordError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

}  // namespace
}  // namespace medsql
