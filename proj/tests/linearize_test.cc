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

#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "medsql/errors.h"
#include "medsql/example_data.h"
#include "medsql/linearize.h"
#include "medsql/sql.h"
#include "medsql/strings.h"

namespace medsql {
namespace {

SchemaDef TwoTables() {
  return SchemaDef{{TableDef{"DEMOGRAPHIC",
                             {{"NAME", ColumnAttr::kText}, {"AGE", ColumnAttr::kNumber}}},
                    TableDef{"DIAGNOSIS", {{"ICD_CODE", ColumnAttr::kText}}}}};
}

std::size_t Count(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t p = haystack.find(needle); p != std::string::npos;
       p = haystack.find(needle, p + 1)) {
    ++n;
  }
  return n;
}

TEST(LinearizeSchemaTest, GoldenString) {
  EXPECT_EQ(LinearizeSchema(TwoTables()),
            "* DEMOGRAPHIC NAME text AGE number DIAGNOSIS ICD_CODE text");
}

TEST(LinearizeSchemaTest, EdgeCases) {
  EXPECT_EQ(LinearizeSchema(SchemaDef{}), "*");
  const SchemaDef one{{TableDef{"T", {{"C", ColumnAttr::kDatetime}}}}};
  EXPECT_EQ(SplitWhitespace(LinearizeSchema(one)).size(), 4u);
  EXPECT_EQ(LinearizeSchema(one), "* T C datetime");
}

TEST(BuildModelInputTest, AppendsQuestion) {
  const std::string in = BuildModelInput(TwoTables(), "What is the age of John Doe?");
  EXPECT_EQ(in,
            "* DEMOGRAPHIC NAME text AGE number DIAGNOSIS ICD_CODE text [SEP] What is "
            "the age of John Doe?");
  EXPECT_EQ(in, BuildModelInput(TwoTables(), "What is the age of John Doe?"));
  EXPECT_EQ(Count(in, "[SEP]"), 1u);
  EXPECT_EQ(in.front(), '*');
}

TEST(BuildModelInputTest, Guards) {
  EXPECT_THROW(BuildModelInput(TwoTables(), "  "), EmptyQuestion);
  EXPECT_THROW(BuildModelInput(TwoTables(), "what [SEP] now"), ReservedToken);
  EXPECT_EQ(BuildModelInput(TwoTables(), "what [SEP] now", "</s>"),
            "* DEMOGRAPHIC NAME text AGE number DIAGNOSIS ICD_CODE text </s> what "
            "[SEP] now");
  const SchemaDef bad{{TableDef{"[SEP]", {}}}};
  EXPECT_THROW(BuildModelInput(bad, "q"), ReservedToken);
}

TEST(LinearizeSchemaTest, InjectiveOnRandomSchemas) {
  std::mt19937_64 rng(4);
  const std::vector<std::string> names = {"A", "B", "C", "AB", "text", "number"};
  const std::vector<ColumnAttr> attrs = {ColumnAttr::kText, ColumnAttr::kNumber,
                                         ColumnAttr::kDatetime};
  std::map<std::string, SchemaDef> seen;
  for (int i = 0; i < 3000; ++i) {
    SchemaDef s;
    const int nt = static_cast<int>(rng() % 3);
    for (int t = 0; t < nt; ++t) {
      TableDef table{"T" + std::to_string(t) + names[rng() % names.size()], {}};
      const int nc = static_cast<int>(rng() % 3);
      std::set<std::string> used;
      for (int c = 0; c < nc; ++c) {
        const std::string col = names[rng() % names.size()];
        if (used.insert(col).second) table.columns.push_back({col, attrs[rng() % 3]});
      }
      s.tables.push_back(table);
    }
    const std::string lin = LinearizeSchema(s);
    auto [it, inserted] = seen.emplace(lin, s);
    if (!inserted) EXPECT_EQ(it->second, s) << lin;
  }
}

Corpus ThreeSamples() {
  Corpus c;
  for (int i = 0; i < 3; ++i) {
    Sample s{"s" + std::to_string(i), "template " + std::to_string(i),
             "paraphrase " + std::to_string(i),
             {{"fr round trip", "fr"}, {"de round trip", "de"}},
             "SELECT COUNT(*) FROM DEMOGRAPHIC WHERE DEMOGRAPHIC.AGE > " + std::to_string(i)};
    c.push_back(s);
  }
  c[2].paraphrase_question.reset();
  return c;
}

TEST(ExportTest, TemplateSource) {
  const ExportResult r = ExportTrainingRecords(ThreeSamples(), {}, ExampleSchema(), {},
                                               ExportOptions{});
  ASSERT_EQ(r.records.size(), 3u);
  EXPECT_EQ(r.n_template, 3u);
  EXPECT_EQ(r.records[1].variant, "template");
  EXPECT_EQ(r.records[1].input, BuildModelInput(ExampleSchema(), "template 1"));
}

TEST(ExportTest, AllSourceCounts) {
  ExportOptions opts;
  opts.source = QuestionSource::kAll;
  const Corpus corpus = ThreeSamples();
  const ExportResult r = ExportTrainingRecords(corpus, {}, ExampleSchema(), {}, opts);
  // 1 template + 1 paraphrase + 2 synthetic, minus the missing paraphrase.
  EXPECT_EQ(r.records.size(), 4u + 4u + 3u);
  std::size_t expected = 0;
  for (const Sample& s : corpus) expected += 1 + (s.paraphrase_question ? 1 : 0) + s.synthetic.size();
  EXPECT_EQ(r.records.size(), expected);
  EXPECT_EQ(r.missing_paraphrase, 1u);
  EXPECT_EQ(r.n_synthetic, 6u);
  for (const TrainingRecord& rec : r.records) {
    EXPECT_NO_THROW(ParseSql(rec.target));
    EXPECT_EQ(Count(rec.input, "[SEP]"), 1u);
  }
}

TEST(ExportTest, ParaphraseSourceCountsMissing) {
  ExportOptions opts;
  opts.source = QuestionSource::kParaphrase;
  const ExportResult r = ExportTrainingRecords(ThreeSamples(), {}, ExampleSchema(), {}, opts);
  EXPECT_EQ(r.records.size(), 2u);
  EXPECT_EQ(r.missing_paraphrase, 1u);
}

TEST(ExportTest, SplitAndSchemaRefs) {
  Corpus corpus = ThreeSamples();
  corpus[1].schema_ref = "spider:x";
  const SchemaDef other{{TableDef{"singer", {{"Age", ColumnAttr::kNumber}}}}};
  SplitAssignment a = {{"s0", Split::kTrain}, {"s1", Split::kTrain}, {"s2", Split::kTest}};
  ExportOptions opts;
  opts.split = Split::kTrain;
  const ExportResult r =
      ExportTrainingRecords(corpus, a, ExampleSchema(), {{"spider:x", other}}, opts);
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_EQ(r.records[1].input, "* singer Age number [SEP] template 1");
  EXPECT_THROW(ExportTrainingRecords(corpus, a, ExampleSchema(), {}, opts), DataError);
  a.erase("s2");
  EXPECT_THROW(ExportTrainingRecords(corpus, a, ExampleSchema(), {{"spider:x", other}}, opts),
               DataError);
}

TEST(ExportTest, FileFormat) {
  const ExportResult r = ExportTrainingRecords(ThreeSamples(), {}, ExampleSchema(), {},
                                               ExportOptions{});
  const std::string text = FormatTrainingFile(r.records);
  const auto lines = SplitOn(text, '\n');
  ASSERT_EQ(lines.size(), 4u);  // trailing newline
  const Json first = Json::parse(lines[0]);
  EXPECT_EQ(first["input"], r.records[0].input);
  EXPECT_EQ(first["target"], ThreeSamples()[0].gold_sql);
}

}  // namespace
}  // namespace medsql
