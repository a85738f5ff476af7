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

#include <cstdlib>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "httplib.h"
#include "medsql/augment.h"
#include "medsql/cli.h"
#include "medsql/corpus.h"
#include "medsql/example_data.h"
#include "medsql/file_util.h"
#include "medsql/json.h"
#include "medsql/predictions.h"
#include "medsql/schema.h"
#include "medsql/strings.h"
#include "testing/temp_dir.h"
#include "testing/unused_port.h"

namespace medsql {
namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult Cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

// A fixture directory with schema, tables, database and a template corpus.
class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new testing::TempDir();
    const auto& d = *dir_;
    std::filesystem::create_directories(d / "tables");
    SaveSchema(d / "schema.json", ExampleSchema());
    WriteExampleTables(d / "tables", 60, 11);
    WriteFileAtomic(d / "templates.json", TemplatesToJson(ExampleTemplates()).dump());
    ASSERT_EQ(Cli({"ingest", "--schema", P("schema.json"), "--tables", P("tables"), "--db",
                   P("m.db")})
                  .code,
              0);
    const RunResult r = Cli({"augment", "--templates", P("templates.json"), "--db", P("m.db"),
                             "--limit", "15", "--out", P("corpus.jsonl")});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  static void TearDownTestSuite() {
    delete dir_;
    dir_ = nullptr;
  }
  static std::string P(const std::string& name) { return (*dir_ / name).string(); }

  static testing::TempDir* dir_;
};

testing::TempDir* CliTest::dir_ = nullptr;

TEST(CliUsageTest, ExitCodes) {
  EXPECT_EQ(Cli({}).code, kExitUsage);
  EXPECT_EQ(Cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Cli({"eval", "--no-such-flag"}).code, kExitUsage);
  EXPECT_EQ(Cli({"--help"}).code, kExitOk);
  EXPECT_EQ(Cli({"stats", "--schema", "x.json"}).code, kExitUsage);  // --corpus missing
  const RunResult missing = Cli({"stats", "--corpus", "/nonexistent/c.jsonl", "--schema", "s"});
  EXPECT_EQ(missing.code, kExitEnvironment);
  EXPECT_NE(missing.err.find("/nonexistent/c.jsonl"), std::string::npos);
}

TEST_F(CliTest, MalformedInputIsADataError) {
  WriteFileAtomic(*dir_ / "bad.jsonl", "{\"id\": \"a\", \"question_template\": \"q\", \"sql\": \"SELECT\"}\n");
  const RunResult r = Cli({"stats", "--corpus", P("bad.jsonl"), "--schema", P("schema.json")});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find("line 1"), std::string::npos) << r.err;
}

TEST_F(CliTest, MissingDatabaseIsAnEnvironmentError) {
  WriteFileAtomic(*dir_ / "not.db", "not a database");
  WriteFileAtomic(*dir_ / "p.jsonl", "{\"id\": \"x\", \"sql\": \"SELECT COUNT ( * ) FROM LAB\"}\n");
  const RunResult r = Cli({"eval", "--corpus", P("corpus.jsonl"), "--preds", P("p.jsonl"), "--db",
                           P("not.db"), "--out", P("r.json")});
  EXPECT_EQ(r.code, kExitEnvironment) << r.err;
}

TEST_F(CliTest, SplitIsDeterministicAndWritesAManifest) {
  const std::vector<std::string> base = {"split", "--corpus", P("corpus.jsonl"), "--schema",
                                         P("schema.json"), "--seed", "7", "--test-size", "20"};
  auto args = base;
  args.insert(args.end(), {"--out", P("s1.tsv")});
  ASSERT_EQ(Cli(args).code, 0);
  args = base;
  args.insert(args.end(), {"--out", P("s2.tsv"), "--jobs", "8"});
  ASSERT_EQ(Cli(args).code, 0);
  EXPECT_EQ(ReadFile(*dir_ / "s1.tsv"), ReadFile(*dir_ / "s2.tsv"));
  EXPECT_EQ(ReadFile(*dir_ / "s1.tsv").rfind("# medsql split format_version=1 seed=7\n", 0), 0u);

  const Json m = Json::parse(ReadFile(*dir_ / "s1.tsv.manifest.json"));
  EXPECT_EQ(m["format_version"], kFormatVersion);
  EXPECT_EQ(m["seed"], 7);
  EXPECT_EQ(m["tool_version"], kToolVersion);
  EXPECT_EQ(m["inputs"].size(), 2u);
  EXPECT_EQ(m["config_hash"].get<std::string>().size(), 16u);
  const Json m2 = Json::parse(ReadFile(*dir_ / "s2.tsv.manifest.json"));
  EXPECT_EQ(m["config_hash"], m2["config_hash"]);
}

TEST_F(CliTest, SplitReportsReferenceDiff) {
  const RunResult r = Cli({"split", "--corpus", P("corpus.jsonl"), "--schema", P("schema.json"),
                           "--test-size", "20", "--out", P("s.tsv"), "--report", P("s.json"),
                           "--reference", "8346,796,1000"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json report = Json::parse(ReadFile(*dir_ / "s.json"));
  EXPECT_EQ(report["reference"]["match"], false);
  EXPECT_EQ(report["reference"]["reference_total"], 10142);
  EXPECT_EQ(report["violations"], 0);
  EXPECT_EQ(Cli({"split", "--corpus", P("corpus.jsonl"), "--schema", P("schema.json"), "--out",
                 P("s.tsv"), "--test-size", "100000"})
                .code,
            kExitData);
}

TEST_F(CliTest, ConfigFileIsOverriddenByFlags) {
  WriteFileAtomic(*dir_ / "run.toml", "[split]\nseed = 3\ntest-size = 20\n");
  const std::vector<std::string> base = {"--config", P("run.toml"), "split", "--corpus",
                                         P("corpus.jsonl"), "--schema", P("schema.json")};
  auto args = base;
  args.insert(args.end(), {"--out", P("c1.tsv")});
  ASSERT_EQ(Cli(args).code, 0);
  EXPECT_EQ(ReadFile(*dir_ / "c1.tsv").rfind("# medsql split format_version=1 seed=3\n", 0), 0u);
  args = base;
  args.insert(args.end(), {"--out", P("c2.tsv"), "--seed", "5"});
  ASSERT_EQ(Cli(args).code, 0);
  EXPECT_EQ(ReadFile(*dir_ / "c2.tsv").rfind("# medsql split format_version=1 seed=5\n", 0), 0u);
}

TEST_F(CliTest, RerankRecoverEvalPipeline) {
  const Corpus corpus = LoadCorpus(*dir_ / "corpus.jsonl");
  // Beams: a broken top candidate, then the gold query with its text
  // literals lower-cased so that only recovery restores them.
  PredictionFile beams;
  for (const Sample& s : corpus) {
    Prediction p;
    p.id = s.id;
    std::string damaged = s.gold_sql;
    bool in_literal = false;
    for (std::size_t i = 0; i < damaged.size(); ++i) {
      if (damaged[i] == '"' && (i == 0 || damaged[i - 1] != '.')) {
        // Quoted identifiers follow a '.'; everything else is a literal.
        in_literal = !in_literal;
      } else if (in_literal) {
        damaged[i] = static_cast<char>(std::tolower(static_cast<unsigned char>(damaged[i])));
      }
    }
    p.candidates = {{"SELECT NOPE FROM NOWHERE", -0.1}, {damaged, -0.5}, {s.gold_sql, -0.9}};
    beams.push_back(p);
  }
  SavePredictions(*dir_ / "beams.jsonl", beams);

  for (const char* jobs : {"1", "8"}) {
    const std::string j = jobs;
    ASSERT_EQ(Cli({"rerank", "--preds", P("beams.jsonl"), "--db", P("m.db"), "--out",
                   P("rr" + j + ".jsonl"), "--jobs", j})
                  .code,
              0);
    ASSERT_EQ(Cli({"recover", "--preds", P("rr" + j + ".jsonl"), "--db", P("m.db"), "--out",
                   P("rc" + j + ".jsonl"), "--jobs", j})
                  .code,
              0);
    const RunResult ev = Cli({"eval", "--corpus", P("corpus.jsonl"), "--preds",
                              P("rc" + j + ".jsonl"), "--db", P("m.db"), "--out",
                              P("ev" + j + ".json"), "--jobs", j, "--breakdown"});
    ASSERT_EQ(ev.code, 0) << ev.err;
  }
  EXPECT_EQ(ReadFile(*dir_ / "rr1.jsonl"), ReadFile(*dir_ / "rr8.jsonl"));
  EXPECT_EQ(ReadFile(*dir_ / "rc1.jsonl"), ReadFile(*dir_ / "rc8.jsonl"));
  EXPECT_EQ(ReadFile(*dir_ / "ev1.json"), ReadFile(*dir_ / "ev8.json"));

  const PredictionFile reranked = LoadPredictions(*dir_ / "rr1.jsonl");
  for (const auto& p : reranked) EXPECT_EQ(p.extra["rerank"]["rank"], 2) << p.id;
  const Json report = Json::parse(ReadFile(*dir_ / "ev1.json"));
  EXPECT_EQ(report["format_version"], kFormatVersion);
  EXPECT_EQ(report["n"], corpus.size());
  EXPECT_EQ(report["acc_ex"], 1.0);
}

TEST_F(CliTest, StrictEvalFailsOnMissingPredictions) {
  WriteFileAtomic(*dir_ / "one.jsonl", "{\"id\": \"nobody\", \"sql\": \"SELECT COUNT ( * ) FROM LAB\"}\n");
  const std::vector<std::string> base = {"eval", "--corpus", P("corpus.jsonl"), "--preds",
                                         P("one.jsonl"), "--db", P("m.db"), "--out", P("e.json")};
  EXPECT_EQ(Cli(base).code, kExitOk);
  auto strict = base;
  strict.push_back("--strict");
  EXPECT_EQ(Cli(strict).code, kExitData);
}

TEST_F(CliTest, AugmentStubIsDeterministicAcrossJobs) {
  for (const char* jobs : {"1", "8"}) {
    const RunResult r = Cli({"augment", "--stub", "--corpus", P("corpus.jsonl"), "--out",
                             P(std::string("a") + jobs + ".jsonl"), "--jobs", jobs});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  EXPECT_EQ(ReadFile(*dir_ / "a1.jsonl"), ReadFile(*dir_ / "a8.jsonl"));
  EXPECT_EQ(Cli({"augment", "--stub", "--corpus", P("corpus.jsonl"), "--out", P("x.jsonl"),
                 "--pivots", "xx"})
                .code,
            kExitData);
  EXPECT_EQ(Cli({"augment", "--corpus", P("corpus.jsonl"), "--out", P("x.jsonl")}).code,
            kExitUsage);
}

TEST_F(CliTest, TranslateUrlEnvironmentOverridesFlag) {
  httplib::Server server;
  server.Post("/translate", [](const httplib::Request& req, httplib::Response& res) {
    const Json body = Json::parse(req.body);
    StubTranslator stub;
    res.set_content(Json{{"text", stub.Translate(body["text"].get<std::string>(),
                                                  body["src"].get<std::string>(),
                                                  body["tgt"].get<std::string>())}}
                        .dump(),
                    "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  const std::string dead = "http://127.0.0.1:" + std::to_string(testing::UnusedLocalPort());
  const std::vector<std::string> args = {"augment", "--corpus", P("corpus.jsonl"), "--url", dead,
                                         "--retries", "0", "--timeout-ms", "300", "--out",
                                         P("h.jsonl")};
  unsetenv("MEDSQL_TRANSLATE_URL");
  EXPECT_EQ(Cli(args).code, kExitEnvironment);

  setenv("MEDSQL_TRANSLATE_URL", ("http://127.0.0.1:" + std::to_string(port)).c_str(), 1);
  const RunResult r = Cli(args);
  unsetenv("MEDSQL_TRANSLATE_URL");
  server.stop();
  t.join();
  ASSERT_EQ(r.code, 0) << r.err;
  ASSERT_EQ(Cli({"augment", "--stub", "--corpus", P("corpus.jsonl"), "--out", P("s.jsonl")}).code, 0);
  EXPECT_EQ(LoadCorpus(*dir_ / "h.jsonl"), LoadCorpus(*dir_ / "s.jsonl"));
}

TEST_F(CliTest, LinearizeAndStats) {
  ASSERT_EQ(Cli({"split", "--corpus", P("corpus.jsonl"), "--schema", P("schema.json"),
                 "--test-size", "20", "--out", P("l.tsv")})
                .code,
            0);
  const RunResult r = Cli({"linearize", "--corpus", P("corpus.jsonl"), "--schema",
                           P("schema.json"), "--split-file", P("l.tsv"), "--split", "test",
                           "--out", P("test.jsonl")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::size_t lines = 0;
  for (const auto& line : SplitOn(ReadFile(*dir_ / "test.jsonl"), '\n')) {
    if (line.empty()) continue;
    ++lines;
    const Json rec = Json::parse(line);
    const std::string input = rec["input"].get<std::string>();
    EXPECT_EQ(input.rfind("* DEMOGRAPHIC SUBJECT_ID text", 0), 0u);
    EXPECT_NE(input.find(" [SEP] "), std::string::npos);
  }
  EXPECT_EQ(lines, 20u);
  const RunResult s = Cli({"stats", "--corpus", P("corpus.jsonl"), "--schema", P("schema.json")});
  ASSERT_EQ(s.code, 0);
  EXPECT_EQ(Json::parse(s.out)["n_samples"], LoadCorpus(*dir_ / "corpus.jsonl").size());
}

}  // namespace
}  // namespace medsql
