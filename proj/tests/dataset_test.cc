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

#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "medsql/corpus.h"
#include "medsql/corpus_stats.h"
#include "medsql/csv.h"
#include "medsql/errors.h"
#include "medsql/example_data.h"
#include "medsql/exec_db.h"
#include "medsql/file_util.h"
#include "medsql/value_lookup.h"
#include "testing/temp_dir.h"

namespace medsql {
namespace {

using testing::TempDir;

std::string Record(const std::string& id, const std::string& question,
                   const std::string& sql) {
  return Json{{"id", id}, {"question_template", question}, {"sql", sql}}.dump() +
         "\n";
}

// Splits a fixture CSV by hand. The example data never quotes a newline,
// so records are lines; quoted commas are handled.
std::vector<std::vector<std::string>> NaiveCsv(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (c == '"') {
        if (quoted && i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else {
          quoted = !quoted;
        }
      } else if (c == ',' && !quoted) {
        fields.emplace_back();
      } else {
        fields.back() += c;
      }
    }
    rows.push_back(fields);
  }
  return rows;
}

TEST(LoadCorpusTest, ThreeRecords) {
  TempDir dir;
  WriteFileAtomic(dir / "c.jsonl",
                  Record("a", "q1", "SELECT * FROM T") +
                      Record("b", "q2", "SELECT A FROM T WHERE B = \"x\"") +
                      Record("c", "q3", "SELECT COUNT(*) FROM T"));
  const Corpus corpus = LoadCorpus(dir / "c.jsonl");
  ASSERT_EQ(corpus.size(), 3u);
  EXPECT_EQ(corpus[1].id, "b");
}

TEST(LoadCorpusTest, DuplicateIdOnLineTwo) {
  try {
    ParseCorpus(Record("a", "q", "SELECT * FROM T") +
                Record("a", "q", "SELECT * FROM T"));
    FAIL() << "expected RecordError";
  } catch (const RecordError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(LoadCorpusTest, UnparseableSqlCarriesParseCause) {
  try {
    ParseCorpus(Record("a", "q", "SELECT * FROM T") +
                Record("b", "q", "SELECT NAME FROM"));
    FAIL() << "expected RecordError";
  } catch (const RecordError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.cause().rfind("parse error at offset 16", 0), 0u) << e.cause();
  }
}

TEST(LoadCorpusTest, MissingFileIsIoError) {
  EXPECT_THROW(LoadCorpus("/nonexistent/medsql/corpus.jsonl"), IoError);
}

TEST(LoadCorpusTest, SaveLoadIsIdentity) {
  std::mt19937_64 rng(11);
  const std::vector<std::string> words = {"how", "many", "patients", "é",
                                          "\"quoted\"", "tab\there", "日本"};
  for (int round = 0; round < 50; ++round) {
    Corpus corpus;
    const int n = static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) {
      Sample s;
      s.id = "id" + std::to_string(round) + "-" + std::to_string(i);
      for (int w = 0; w < 1 + static_cast<int>(rng() % 6); ++w) {
        s.template_question += words[rng() % words.size()] + " ";
      }
      if (rng() % 2) s.paraphrase_question = words[rng() % words.size()];
      for (int k = 0; k < static_cast<int>(rng() % 3); ++k) {
        s.synthetic.push_back({words[rng() % words.size()], k % 2 ? "fr" : "de"});
      }
      s.gold_sql = "SELECT COUNT(*) FROM DEMOGRAPHIC WHERE DEMOGRAPHIC.AGE < " +
                   std::to_string(rng() % 90);
      if (rng() % 3 == 0) s.schema_ref = "spider:x";
      if (rng() % 2) s.extra["zeta"] = static_cast<int>(rng() % 5);
      if (rng() % 2) s.extra["alpha"] = Json::array({1, "two"});
      corpus.push_back(s);
    }
    EXPECT_EQ(ParseCorpus(FormatCorpus(corpus)), corpus);
  }
}

class ExampleDbTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new TempDir();
    files_ = WriteExampleTables(dir_->path(), 10, 3);
    BuildExecDb(ExampleSchema(), files_, *dir_ / "m.db");
  }
  static void TearDownTestSuite() {
    delete dir_;
    dir_ = nullptr;
  }
  static TempDir* dir_;
  static std::map<std::string, std::filesystem::path> files_;
};

TempDir* ExampleDbTest::dir_ = nullptr;
std::map<std::string, std::filesystem::path> ExampleDbTest::files_;

TEST_F(ExampleDbTest, RowCountsMatchCsv) {
  const ExecDb db = ExecDb::Open(*dir_ / "m.db");
  ASSERT_EQ(files_.size(), 5u);
  for (const auto& [table, path] : files_) {
    const std::size_t csv_rows = NaiveCsv(path).size() - 1;
    EXPECT_EQ(csv_rows, 10u);
    const QueryResult r = db.Execute("SELECT COUNT(*) FROM " + table);
    ASSERT_TRUE(r.ok) << r.error;
    EXPECT_EQ(std::get<std::int64_t>(r.rows[0][0]),
              static_cast<std::int64_t>(csv_rows));
  }
}

TEST_F(ExampleDbTest, StoredSchemaRoundTrips) {
  const ExecDb db = ExecDb::Open(*dir_ / "m.db");
  EXPECT_EQ(db.StoredSchema(), ExampleSchema());
}

TEST_F(ExampleDbTest, LookupMatchesDistinctScanOfCsv) {
  const ExecDb db = ExecDb::Open(*dir_ / "m.db");
  const SchemaDef schema = ExampleSchema();
  const ValueLookup lookup = BuildValueLookup(db, schema);
  std::size_t columns = 0;
  for (const TableDef& t : schema.tables) {
    const auto rows = NaiveCsv(files_.at(t.name));
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      ++columns;
      const ValueSet* set = lookup.Find(t.name, t.columns[c].name);
      ASSERT_NE(set, nullptr);
      std::set<std::string> expected;
      for (std::size_t r = 1; r < rows.size(); ++r) {
        if (!rows[r][c].empty()) expected.insert(rows[r][c]);
      }
      // Number cells in the fixture are integers, whose canonical text is
      // the CSV text.
      EXPECT_EQ(set->values,
                std::vector<std::string>(expected.begin(), expected.end()))
          << t.name << "." << t.columns[c].name;
    }
  }
  EXPECT_EQ(lookup.size(), columns);
}

TEST_F(ExampleDbTest, LookupIsCaseInsensitive) {
  const ExecDb db = ExecDb::Open(*dir_ / "m.db");
  const ValueLookup lookup = BuildValueLookup(db, ExampleSchema());
  EXPECT_EQ(lookup.Find("demographic", "language"),
            lookup.Find("DEMOGRAPHIC", "LANGUAGE"));
  EXPECT_EQ(lookup.Find("DEMOGRAPHIC", "NOPE"), nullptr);
}

TEST_F(ExampleDbTest, TimeoutAndMultipleStatementsFail) {
  const ExecDb db = ExecDb::Open(*dir_ / "m.db");
  const QueryResult slow = db.ExecuteNative(
      "WITH RECURSIVE c(x) AS (SELECT 1 UNION ALL SELECT x + 1 FROM c) "
      "SELECT COUNT(*) FROM c",
      std::chrono::milliseconds(50));
  EXPECT_FALSE(slow.ok);
  EXPECT_TRUE(slow.timed_out);
  const QueryResult two = db.ExecuteNative("SELECT 1; SELECT 2");
  EXPECT_FALSE(two.ok);
  EXPECT_TRUE(db.ExecuteNative("SELECT 1;").ok);
}

TEST_F(ExampleDbTest, NumericComparisonWithQuotedLiteral) {
  const ExecDb db = ExecDb::Open(*dir_ / "m.db");
  const QueryResult a = db.Execute(
      "SELECT COUNT(*) FROM DEMOGRAPHIC WHERE DEMOGRAPHIC.\"DOB_YEAR\" < \"2100\"");
  const QueryResult b = db.Execute(
      "SELECT COUNT(*) FROM DEMOGRAPHIC WHERE DEMOGRAPHIC.DOB_YEAR < 2100");
  ASSERT_TRUE(a.ok) << a.error;
  ASSERT_TRUE(b.ok) << b.error;
  EXPECT_EQ(a.rows, b.rows);
}

TEST_F(ExampleDbTest, BuildIsDeterministic) {
  BuildExecDb(ExampleSchema(), files_, *dir_ / "again.db");
  const ExecDb a = ExecDb::Open(*dir_ / "m.db");
  const ExecDb b = ExecDb::Open(*dir_ / "again.db");
  for (const TableDef& t : ExampleSchema().tables) {
    const std::string sql = "SELECT * FROM " + t.name + " ORDER BY rowid";
    EXPECT_EQ(a.Execute(sql).rows, b.Execute(sql).rows);
  }
}

SchemaDef OneTable(ColumnAttr attr) {
  return SchemaDef{{TableDef{"T", {{"ID", ColumnAttr::kText}, {"V", attr}}}}};
}

TEST(BuildExecDbTest, HeaderOnlyCsvGivesEmptyTable) {
  TempDir dir;
  WriteFileAtomic(dir / "t.csv", "ID,V\r\n");
  BuildExecDb(OneTable(ColumnAttr::kText), {{"T", dir / "t.csv"}}, dir / "x.db");
  const ExecDb db = ExecDb::Open(dir / "x.db");
  EXPECT_EQ(std::get<std::int64_t>(db.Execute("SELECT COUNT(*) FROM T").rows[0][0]), 0);
  const ValueLookup lookup = BuildValueLookup(db, OneTable(ColumnAttr::kText));
  ASSERT_NE(lookup.Find("T", "V"), nullptr);
  EXPECT_TRUE(lookup.Find("T", "V")->values.empty());
}

TEST(BuildExecDbTest, NonNumericInNumberColumnIsTypeError) {
  TempDir dir;
  WriteFileAtomic(dir / "t.csv", "ID,V\n1,12\n2,abc\n");
  EXPECT_THROW(BuildExecDb(OneTable(ColumnAttr::kNumber), {{"T", dir / "t.csv"}},
                           dir / "x.db"),
               TypeError);
  EXPECT_FALSE(std::filesystem::exists(dir / "x.db"));
}

TEST(BuildExecDbTest, RaggedCsvReportsRowAndColumn) {
  TempDir dir;
  WriteFileAtomic(dir / "t.csv", "ID,V\n1,2\n3\n");
  try {
    BuildExecDb(OneTable(ColumnAttr::kText), {{"T", dir / "t.csv"}}, dir / "x.db");
    FAIL() << "expected CsvError";
  } catch (const CsvError& e) {
    EXPECT_EQ(e.row(), 3u);
    EXPECT_EQ(e.column(), 2u);
  }
}

TEST(BuildExecDbTest, HeaderMustNameSchemaColumns) {
  TempDir dir;
  WriteFileAtomic(dir / "t.csv", "ID,W\n1,2\n");
  EXPECT_THROW(BuildExecDb(OneTable(ColumnAttr::kText), {{"T", dir / "t.csv"}},
                           dir / "x.db"),
               CsvError);
  EXPECT_THROW(BuildExecDb(OneTable(ColumnAttr::kText), {}, dir / "x.db"),
               SchemaError);
}

TEST(BuildExecDbTest, NumberColumnsKeepCanonicalValues) {
  TempDir dir;
  WriteFileAtomic(dir / "t.csv", "v,id\n2.50,a\n,b\n7,c\n2.5,d\n");
  BuildExecDb(OneTable(ColumnAttr::kNumber), {{"T", dir / "t.csv"}}, dir / "x.db");
  const ExecDb db = ExecDb::Open(dir / "x.db");
  const ValueLookup lookup = BuildValueLookup(db, OneTable(ColumnAttr::kNumber));
  EXPECT_EQ(lookup.Find("T", "V")->values, (std::vector<std::string>{"2.5", "7"}));
}

TEST(ExecDbTest, OpenRejectsMissingAndGarbage) {
  TempDir dir;
  EXPECT_THROW(ExecDb::Open(dir / "none.db"), DbError);
  WriteFileAtomic(dir / "junk.db", std::string(4096, 'x'));
  EXPECT_THROW(ExecDb::Open(dir / "junk.db"), DbError);
}

TEST(LookupTest, LanguageColumnDistinctCount) {
  TempDir dir;
  const std::vector<std::string> langs = {"ENGL", "PORT", "HAIT", "ENGL", "PORT",
                                          "ENGL", "HAIT", "ENGL", "PORT", "ENGL"};
  std::string csv = "ID,LANGUAGE\n";
  for (std::size_t i = 0; i < langs.size(); ++i) {
    csv += std::to_string(i) + "," + langs[i] + "\n";
  }
  WriteFileAtomic(dir / "d.csv", csv);
  const SchemaDef schema{{TableDef{"DEMOGRAPHIC", {{"ID", ColumnAttr::kText},
                                                   {"LANGUAGE", ColumnAttr::kText}}}}};
  BuildExecDb(schema, {{"DEMOGRAPHIC", dir / "d.csv"}}, dir / "x.db");
  const ValueLookup lookup = BuildValueLookup(ExecDb::Open(dir / "x.db"), schema);
  const std::set<std::string> oracle(langs.begin(), langs.end());
  EXPECT_EQ(lookup.Find("DEMOGRAPHIC", "LANGUAGE")->values.size(), oracle.size());
  EXPECT_EQ(oracle.size(), 3u);
}

TEST(CorpusStatsTest, EmptyCorpusThrows) {
  EXPECT_THROW(ComputeCorpusStats({}, ExampleSchema()), EmptyCorpus);
}

TEST(CorpusStatsTest, SixTokenQuery) {
  // select a , b from t
  const Sample s{"a", "how many", std::nullopt, {}, "SELECT A, B FROM T"};
  const CorpusStats st = ComputeCorpusStats({s}, ExampleSchema());
  EXPECT_DOUBLE_EQ(st.avg_sql_len, 6.0);
  EXPECT_EQ(CorpusStatsToJson(st)["avg_sql_len"].dump(), "6.0");
  EXPECT_EQ(st.n_tables, 5u);
  EXPECT_EQ(st.columns_per_table[0].second, 23u);
}

TEST(CorpusStatsTest, TwoQuestionLengths) {
  Sample a{"a", "one two three four", "p q", {}, "SELECT * FROM T"};
  Sample b{"b", "one two three four five six", std::nullopt, {}, "SELECT * FROM T"};
  const CorpusStats st = ComputeCorpusStats({a, b}, ExampleSchema());
  EXPECT_DOUBLE_EQ(st.avg_template_question_len, 5.0);
  EXPECT_DOUBLE_EQ(st.avg_paraphrase_question_len, 2.0);
  EXPECT_EQ(st.n_paraphrases, 1u);
}

TEST(CorpusStatsTest, SelfConcatenationKeepsAverages) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 100; ++round) {
    Corpus c;
    const int n = 1 + static_cast<int>(rng() % 7);
    for (int i = 0; i < n; ++i) {
      Sample s;
      s.id = std::to_string(i);
      for (int w = 0; w <= static_cast<int>(rng() % 9); ++w) s.template_question += "w ";
      if (rng() % 2) s.paraphrase_question = std::string(rng() % 4, 'p') + " x";
      s.gold_sql = "SELECT A FROM T";
      for (int k = 0; k < static_cast<int>(rng() % 4); ++k) {
        s.gold_sql += (k == 0 ? " WHERE " : " OR ") + std::string("C = ") +
                      std::to_string(k);
      }
      c.push_back(s);
    }
    Corpus twice = c;
    twice.insert(twice.end(), c.begin(), c.end());
    const CorpusStats x = ComputeCorpusStats(c, ExampleSchema());
    const CorpusStats y = ComputeCorpusStats(twice, ExampleSchema());
    EXPECT_EQ(x.avg_template_question_len, y.avg_template_question_len);
    EXPECT_EQ(x.avg_paraphrase_question_len, y.avg_paraphrase_question_len);
    EXPECT_EQ(x.avg_sql_len, y.avg_sql_len);
    EXPECT_EQ(x.avg_agg_columns, y.avg_agg_columns);
    EXPECT_EQ(x.avg_conditions, y.avg_conditions);
  }
}

class MergeTest : public ::testing::Test {
 protected:
  void SetUp() override {
    WriteFileAtomic(dir_ / "tables.json", R"([{
      "db_id": "concert_singer",
      "table_names_original": ["stadium", "singer"],
      "column_names_original": [[-1, "*"], [0, "Stadium_ID"], [0, "Name"],
                                [1, "Singer_ID"], [1, "Age"]],
      "column_types": ["text", "number", "text", "number", "number"]}])");
  }
  void WriteQuestions(const std::string& second_query) {
    Json q = Json::array();
    q.push_back({{"db_id", "concert_singer"},
                 {"question", "How many singers do we have?"},
                 {"query", "SELECT count(*) FROM singer"}});
    q.push_back({{"db_id", "concert_singer"},
                 {"question", "Oldest singer?"},
                 {"query", second_query}});
    WriteFileAtomic(dir_ / "q.json", q.dump());
  }
  TempDir dir_;
};

TEST_F(MergeTest, AppendsAfterPrimary) {
  WriteQuestions("SELECT Name FROM stadium WHERE Stadium_ID = 3");
  Corpus primary;
  for (int i = 0; i < 8346; ++i) {
    primary.push_back({"m" + std::to_string(i), "q", std::nullopt, {},
                       "SELECT * FROM DEMOGRAPHIC"});
  }
  const MergeResult r = MergeOutOfDomain(primary, dir_ / "q.json", dir_ / "tables.json");
  ASSERT_EQ(r.samples.size(), 8348u);
  EXPECT_EQ(r.samples[8345].id, "m8345");
  EXPECT_EQ(r.samples[8346].id, "spider:000000");
  EXPECT_EQ(r.samples[8347].schema_ref, "spider:concert_singer");
  const SchemaDef& s = r.schemas.at("spider:concert_singer");
  ASSERT_EQ(s.tables.size(), 2u);
  EXPECT_EQ(s.tables[1].columns[1].attr, ColumnAttr::kNumber);
}

TEST_F(MergeTest, NestedQueryStrictAndLenient) {
  WriteQuestions(
      "SELECT Name FROM singer WHERE Age > (SELECT avg(Age) FROM singer)");
  try {
    MergeOutOfDomain({}, dir_ / "q.json", dir_ / "tables.json");
    FAIL() << "expected RecordError";
  } catch (const RecordError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  const MergeResult r = MergeOutOfDomain({}, dir_ / "q.json", dir_ / "tables.json",
                                         {"spider", true});
  EXPECT_EQ(r.samples.size(), 1u);
  EXPECT_EQ(r.skipped, 1u);
}

TEST_F(MergeTest, PrefixedIdsNeverCollide) {
  WriteQuestions("SELECT Name FROM stadium");
  const Corpus primary = {{"000000", "q", std::nullopt, {}, "SELECT * FROM T"},
                          {"1", "q", std::nullopt, {}, "SELECT * FROM T"}};
  const MergeResult r = MergeOutOfDomain(primary, dir_ / "q.json", dir_ / "tables.json");
  std::set<std::string> ids;
  for (const Sample& s : r.samples) ids.insert(s.id);
  EXPECT_EQ(ids.size(), r.samples.size());
}

}  // namespace
}  // namespace medsql
