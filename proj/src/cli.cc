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

#include "medsql/cli.h"

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "medsql/augment.h"
#include "medsql/corpus.h"
#include "medsql/corpus_stats.h"
#include "medsql/errors.h"
#include "medsql/exec_db.h"
#include "medsql/file_util.h"
#include "medsql/json.h"
#include "medsql/linearize.h"
#include "medsql/metrics.h"
#include "medsql/predictions.h"
#include "medsql/recovery.h"
#include "medsql/rerank.h"
#include "medsql/schema.h"
#include "medsql/split.h"
#include "medsql/strings.h"
#include "medsql/value_lookup.h"

namespace medsql {
namespace {

namespace fs = std::filesystem;

constexpr char kTranslateUrlEnv[] = "MEDSQL_TRANSLATE_URL";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Everything a command needs to describe its outputs. `config` holds the
// resolved options that affect output bytes; --jobs is left out on purpose
// since outputs do not depend on it.
class Manifest {
 public:
  explicit Manifest(std::string command) : command_(std::move(command)) {}

  void AddInput(const std::string& role, const fs::path& path) {
    inputs_.push_back({{"role", role},
                       {"path", path.string()},
                       {"fnv1a64", Hex64(Fnv1a64(ReadFile(path)))}});
  }
  Json& config() { return config_; }
  void set_seed(std::uint64_t seed) { seed_ = seed; }

  // Writes `contents` to `out` and the manifest to `out`.manifest.json,
  // both through a temporary file and rename.
  void WriteOutput(const fs::path& out, const std::string& contents) const {
    WriteFileAtomic(out, contents);
    WriteFor(out, contents);
  }

  // For outputs produced by other means (the execution database).
  void WriteFor(const fs::path& out) const { WriteFor(out, ReadFile(out)); }

 private:
  void WriteFor(const fs::path& out, const std::string& contents) const {
    Json m;
    m["format_version"] = kFormatVersion;
    m["tool"] = "medsql";
    m["tool_version"] = kToolVersion;
    m["command"] = command_;
    m["seed"] = seed_;
    m["inputs"] = inputs_;
    m["config"] = config_;
    m["config_hash"] = Hex64(Fnv1a64(config_.dump()));
    m["output"] = {{"path", out.filename().string()},
                   {"fnv1a64", Hex64(Fnv1a64(contents))}};
    WriteFileAtomic(out.string() + ".manifest.json", m.dump(2) + "\n");
  }

  std::string command_;
  Json inputs_ = Json::array();
  Json config_ = Json::object();
  std::uint64_t seed_ = 0;
};

void RequireFile(const std::string& flag, const std::string& path) {
  if (path.empty()) throw UsageError(flag + " is required");
  if (!fs::is_regular_file(path)) throw IoError(flag + ": no such file: " + path);
}

std::vector<std::string> SplitCommaList(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    for (const auto& part : SplitOn(item, ',')) {
      const std::string p = NormalizeWhitespace(part);
      if (!p.empty()) out.push_back(p);
    }
  }
  return out;
}

std::map<std::string, SchemaDef> LoadExtraSchemas(const fs::path& path) {
  Json json;
  try {
    json = Json::parse(ReadFile(path));
  } catch (const Json::exception& e) {
    throw DataError(path.filename().string() + ": " + e.what());
  }
  auto schemas = json.find("schemas");
  if (!json.is_object() || schemas == json.end() || !schemas->is_object()) {
    throw DataError(path.filename().string() + ": expected {\"schemas\": {...}}");
  }
  std::map<std::string, SchemaDef> out;
  for (auto it = schemas->begin(); it != schemas->end(); ++it) {
    out[it.key()] = SchemaFromJson(it.value());
  }
  return out;
}

std::string SummaryLine(Json summary) { return summary.dump() + "\n"; }

// ---------------------------------------------------------------- ingest

struct IngestArgs {
  std::string schema;
  std::string corpus;
  std::string release;
  std::string natural;
  std::string tables;
  std::string db;
  std::string out;
  std::string ood_questions;
  std::string ood_tables;
  std::string ood_name = "spider";
  bool ood_lenient = false;
  std::string schemas_out;
};

int RunIngest(const IngestArgs& a, std::ostream& out, std::ostream& err) {
  RequireFile("--schema", a.schema);
  if (a.tables.empty() && a.corpus.empty() && a.release.empty()) {
    throw UsageError("ingest needs --tables, --corpus or --release");
  }
  if (!a.corpus.empty() && !a.release.empty()) {
    throw UsageError("--corpus and --release are exclusive");
  }
  const SchemaDef schema = LoadSchema(a.schema);
  Json summary = {{"command", "ingest"}};

  if (!a.tables.empty()) {
    if (a.db.empty()) throw UsageError("--tables requires --db");
    if (!fs::is_directory(a.tables)) throw IoError("--tables: no such directory: " + a.tables);
    Manifest m("ingest");
    m.AddInput("schema", a.schema);
    std::map<std::string, fs::path> files;
    for (const TableDef& t : schema.tables) {
      files[t.name] = fs::path(a.tables) / (t.name + ".csv");
      if (fs::is_regular_file(files[t.name])) m.AddInput("table:" + t.name, files[t.name]);
    }
    BuildExecDb(schema, files, a.db);
    m.WriteFor(a.db);
    summary["db"] = a.db;
  }

  if (!a.corpus.empty() || !a.release.empty()) {
    if (a.out.empty()) throw UsageError("--out is required when ingesting a corpus");
    Manifest m("ingest");
    m.AddInput("schema", a.schema);
    Corpus corpus;
    if (!a.corpus.empty()) {
      RequireFile("--corpus", a.corpus);
      m.AddInput("corpus", a.corpus);
      corpus = LoadCorpus(a.corpus);
    } else {
      if (!fs::is_directory(a.release)) throw IoError("--release: no such directory: " + a.release);
      std::optional<fs::path> natural;
      if (!a.natural.empty()) natural = a.natural;
      corpus = ImportMimicsqlRelease(a.release, natural, schema);
      m.config()["release"] = a.release;
      m.config()["natural"] = a.natural;
    }
    if (!a.ood_questions.empty() || !a.ood_tables.empty()) {
      RequireFile("--ood-questions", a.ood_questions);
      RequireFile("--ood-tables", a.ood_tables);
      if (a.schemas_out.empty()) throw UsageError("--ood-* requires --schemas-out");
      m.AddInput("ood_questions", a.ood_questions);
      m.AddInput("ood_tables", a.ood_tables);
      m.config()["ood_name"] = a.ood_name;
      m.config()["ood_lenient"] = a.ood_lenient;
      MergeOptions mo;
      mo.corpus_name = a.ood_name;
      mo.lenient = a.ood_lenient;
      MergeResult merged = MergeOutOfDomain(corpus, a.ood_questions, a.ood_tables, mo);
      for (const auto& reason : merged.skip_reasons) err << "ingest: skipped record " << reason << "\n";
      Json schemas = Json::object();
      for (const auto& [name, s] : merged.schemas) schemas[name] = SchemaToJson(s);
      m.WriteOutput(a.schemas_out,
                    Json{{"format_version", kFormatVersion}, {"schemas", schemas}}.dump(2) + "\n");
      summary["ood_converted"] = merged.converted;
      summary["ood_skipped"] = merged.skipped;
      corpus = std::move(merged.samples);
    }
    m.WriteOutput(a.out, FormatCorpus(corpus));
    summary["samples"] = corpus.size();
    summary["out"] = a.out;
  }
  out << SummaryLine(summary);
  return kExitOk;
}

// ----------------------------------------------------------------- stats

struct StatsArgs {
  std::string corpus;
  std::string schema;
  std::string out;
};

int RunStats(const StatsArgs& a, std::ostream& out) {
  RequireFile("--corpus", a.corpus);
  RequireFile("--schema", a.schema);
  const Corpus corpus = LoadCorpus(a.corpus);
  const SchemaDef schema = LoadSchema(a.schema);
  const std::string text = CorpusStatsToJson(ComputeCorpusStats(corpus, schema)).dump(2) + "\n";
  if (a.out.empty()) {
    out << text;
    return kExitOk;
  }
  Manifest m("stats");
  m.AddInput("corpus", a.corpus);
  m.AddInput("schema", a.schema);
  m.WriteOutput(a.out, text);
  out << SummaryLine({{"command", "stats"}, {"samples", corpus.size()}, {"out", a.out}});
  return kExitOk;
}

// ----------------------------------------------------------------- split

struct SplitArgs {
  std::string corpus;
  std::string schema;
  std::uint64_t seed = 0;
  std::size_t test_size = 1000;
  std::vector<std::string> designated;
  std::string out;
  std::string report;
  std::vector<std::size_t> reference;
  int jobs = 1;
};

int RunSplit(const SplitArgs& a, std::ostream& out, std::ostream& err) {
  RequireFile("--corpus", a.corpus);
  RequireFile("--schema", a.schema);
  if (a.out.empty()) throw UsageError("--out is required");
  if (!a.reference.empty() && a.reference.size() != 3) {
    throw UsageError("--reference takes three counts: TRAIN,DEV,TEST");
  }
  const Corpus corpus = LoadCorpus(a.corpus);
  const SchemaDef schema = LoadSchema(a.schema);
  SplitSpec spec;
  spec.seed = a.seed;
  spec.test_size = a.test_size;
  if (!a.designated.empty()) spec.designated_tables = SplitCommaList(a.designated);
  ValidateSplitSpec(spec, schema);

  const SplitResult result = AssignSplits(corpus, spec, a.jobs);
  for (const auto& c : result.conflicts) err << "split: conflict: " << c << "\n";
  const auto violations = VerifySplit(corpus, result.assignment, spec);

  Manifest m("split");
  m.AddInput("corpus", a.corpus);
  m.AddInput("schema", a.schema);
  m.set_seed(a.seed);
  m.config() = {{"seed", a.seed},
                {"test_size", a.test_size},
                {"designated_tables", spec.designated_tables}};
  m.WriteOutput(a.out, FormatSplitFile(corpus, result.assignment, a.seed));

  std::optional<SplitSizes> reference;
  if (!a.reference.empty()) reference = SplitSizes{a.reference[0], a.reference[1], a.reference[2]};
  Json report = SplitReportJson(result, spec, corpus.size(), reference);
  report["violations"] = violations.size();
  if (!a.report.empty()) m.WriteOutput(a.report, report.dump(2) + "\n");

  Json summary = {{"command", "split"},
                  {"TRAIN", result.sizes.train},
                  {"DEV", result.sizes.dev},
                  {"TEST", result.sizes.test},
                  {"violations", violations.size()}};
  if (reference) summary["reference_match"] = report["reference"]["match"];
  out << SummaryLine(summary);
  return kExitOk;
}

// ------------------------------------------------------------- linearize

struct LinearizeArgs {
  std::string corpus;
  std::string schema;
  std::string split_file;
  std::string split;
  std::string question_source = "template";
  std::string separator = std::string(kDefaultSeparator);
  std::string extra_schemas;
  std::string out;
};

int RunLinearize(const LinearizeArgs& a, std::ostream& out, std::ostream& err) {
  RequireFile("--corpus", a.corpus);
  RequireFile("--schema", a.schema);
  if (a.out.empty()) throw UsageError("--out is required");
  if (!a.split.empty() && a.split_file.empty()) throw UsageError("--split requires --split-file");

  Manifest m("linearize");
  m.AddInput("corpus", a.corpus);
  m.AddInput("schema", a.schema);
  const Corpus corpus = LoadCorpus(a.corpus);
  const SchemaDef schema = LoadSchema(a.schema);
  SplitAssignment assignment;
  ExportOptions opts;
  opts.source = ParseQuestionSource(a.question_source);
  opts.separator = a.separator;
  if (!a.split_file.empty()) {
    RequireFile("--split-file", a.split_file);
    m.AddInput("split_file", a.split_file);
    assignment = ParseSplitFile(ReadFile(a.split_file));
  }
  if (!a.split.empty()) opts.split = ParseSplitName(a.split);
  std::map<std::string, SchemaDef> extra;
  if (!a.extra_schemas.empty()) {
    RequireFile("--extra-schemas", a.extra_schemas);
    m.AddInput("extra_schemas", a.extra_schemas);
    extra = LoadExtraSchemas(a.extra_schemas);
  }
  m.config() = {{"question_source", QuestionSourceName(opts.source)},
                {"separator", opts.separator},
                {"split", a.split.empty() ? "" : std::string(SplitName(*opts.split))}};

  const ExportResult r = ExportTrainingRecords(corpus, assignment, schema, extra, opts);
  if (r.missing_paraphrase > 0) {
    err << "linearize: " << r.missing_paraphrase << " sample(s) have no paraphrase question\n";
  }
  m.WriteOutput(a.out, FormatTrainingFile(r.records));
  out << SummaryLine({{"command", "linearize"},
                      {"records", r.records.size()},
                      {"template", r.n_template},
                      {"paraphrase", r.n_paraphrase},
                      {"synthetic", r.n_synthetic},
                      {"missing_paraphrase", r.missing_paraphrase}});
  return kExitOk;
}

// --------------------------------------------------------------- augment

struct AugmentArgs {
  std::string corpus;
  std::string out;
  std::vector<std::string> pivots = {"fr", "de"};
  std::vector<std::string> allowed_pivots = {"fr", "de"};
  bool stub = false;
  std::string url;
  int timeout_ms = 10000;
  int retries = 2;
  std::string templates;
  std::string db;
  std::size_t limit = 100;
  int jobs = 1;
};

int RunAugment(const AugmentArgs& a, std::ostream& out, std::ostream& err) {
  if (a.out.empty()) throw UsageError("--out is required");
  Manifest m("augment");
  Json summary = {{"command", "augment"}};

  if (!a.templates.empty()) {
    RequireFile("--templates", a.templates);
    RequireFile("--db", a.db);
    m.AddInput("templates", a.templates);
    m.AddInput("db", a.db);
    Corpus corpus;
    if (!a.corpus.empty()) {
      RequireFile("--corpus", a.corpus);
      m.AddInput("corpus", a.corpus);
      corpus = LoadCorpus(a.corpus);
    }
    const ExecDb db = ExecDb::Open(a.db);
    const auto schema = db.StoredSchema();
    if (!schema) throw DataError("database has no stored schema; rebuild it with `ingest`");
    const Corpus generated =
        InstantiateTemplates(LoadTemplates(a.templates), BuildValueLookup(db, *schema), a.limit);
    std::set<std::string> ids;
    for (const auto& s : corpus) ids.insert(s.id);
    for (const auto& s : generated) {
      if (!ids.insert(s.id).second) throw DataError("generated id '" + s.id + "' already in corpus");
      corpus.push_back(s);
    }
    m.config() = {{"mode", "templates"}, {"limit", a.limit}};
    m.WriteOutput(a.out, FormatCorpus(corpus));
    summary["generated"] = generated.size();
    summary["samples"] = corpus.size();
    out << SummaryLine(summary);
    return kExitOk;
  }

  RequireFile("--corpus", a.corpus);
  m.AddInput("corpus", a.corpus);
  const Corpus corpus = LoadCorpus(a.corpus);

  // Precedence: config file < flag < environment.
  std::string url = a.url;
  if (const char* env = std::getenv(kTranslateUrlEnv); env != nullptr && *env != '\0') url = env;
  std::unique_ptr<Translator> translator;
  if (a.stub) {
    translator = std::make_unique<StubTranslator>();
  } else {
    if (url.empty()) {
      throw UsageError(std::string("augment needs --stub, --url or ") + kTranslateUrlEnv);
    }
    TranslatorEndpoint ep;
    ep.base_url = url;
    ep.timeout = std::chrono::milliseconds(a.timeout_ms);
    ep.retries = a.retries;
    translator = std::make_unique<HttpTranslator>(ep);
  }
  AugmentOptions opts;
  opts.allowed_pivots = SplitCommaList(a.allowed_pivots);
  opts.jobs = a.jobs;
  const std::vector<std::string> pivots = SplitCommaList(a.pivots);
  // The endpoint itself is not recorded: outputs are only reproducible
  // under --stub, and the URL may carry credentials.
  m.config() = {{"mode", "back-translation"},
                {"pivots", pivots},
                {"allowed_pivots", opts.allowed_pivots},
                {"translator", a.stub ? "stub" : "http"}};

  const AugmentResult r = AugmentCorpus(corpus, pivots, *translator, opts);
  for (const auto& f : r.failures) {
    err << "augment: " << f.id << " [" << f.pivot << "]: " << f.error << "\n";
  }
  if (!r.failures.empty() && r.added == 0 && r.degenerate == 0) {
    throw TranslateError(0, "every translation failed; last error: " + r.failures.back().error);
  }
  m.WriteOutput(a.out, FormatCorpus(r.corpus));
  summary["added"] = r.added;
  summary["degenerate"] = r.degenerate;
  summary["failures"] = r.failures.size();
  out << SummaryLine(summary);
  return kExitOk;
}

// ---------------------------------------------------------------- rerank

struct RerankArgs {
  std::string preds;
  std::string db;
  std::string out;
  bool require_nonempty = false;
  int timeout_ms = static_cast<int>(kDefaultQueryTimeout.count());
  int jobs = 1;
};

int RunRerank(const RerankArgs& a, std::ostream& out) {
  RequireFile("--preds", a.preds);
  RequireFile("--db", a.db);
  if (a.out.empty()) throw UsageError("--out is required");
  Manifest m("rerank");
  m.AddInput("preds", a.preds);
  m.AddInput("db", a.db);
  m.config() = {{"require_nonempty", a.require_nonempty}, {"timeout_ms", a.timeout_ms}};
  RerankOptions opts;
  opts.require_nonempty = a.require_nonempty;
  opts.timeout = std::chrono::milliseconds(a.timeout_ms);
  const RerankFileResult r = RerankFile(LoadPredictions(a.preds), a.db, opts, a.jobs);
  m.WriteOutput(a.out, FormatPredictions(r.predictions));
  out << SummaryLine({{"command", "rerank"},
                      {"records", r.predictions.size()},
                      {"executions", r.executions},
                      {"all_failed", r.all_failed}});
  return kExitOk;
}

// --------------------------------------------------------------- recover

struct RecoverArgs {
  std::string preds;
  std::string db;
  std::string schema;
  std::string out;
  bool no_prefilter = false;
  int jobs = 1;
};

int RunRecover(const RecoverArgs& a, std::ostream& out) {
  RequireFile("--preds", a.preds);
  RequireFile("--db", a.db);
  if (a.out.empty()) throw UsageError("--out is required");
  Manifest m("recover");
  m.AddInput("preds", a.preds);
  m.AddInput("db", a.db);
  const ExecDb db = ExecDb::Open(a.db);
  std::optional<SchemaDef> schema;
  if (!a.schema.empty()) {
    RequireFile("--schema", a.schema);
    m.AddInput("schema", a.schema);
    schema = LoadSchema(a.schema);
  } else {
    schema = db.StoredSchema();
    if (!schema) throw DataError("database has no stored schema; pass --schema");
  }
  m.config() = {{"prefilter", !a.no_prefilter}};
  RecoveryOptions opts;
  opts.prefilter = !a.no_prefilter;
  const RecoverFileResult r =
      RecoverFile(LoadPredictions(a.preds), BuildValueLookup(db, *schema), opts, a.jobs);
  m.WriteOutput(a.out, FormatPredictions(r.predictions));
  out << SummaryLine({{"command", "recover"},
                      {"records", r.predictions.size()},
                      {"changed_values", r.changed_values},
                      {"parse_errors", r.parse_errors}});
  return kExitOk;
}

// ------------------------------------------------------------------ eval

struct EvalArgs {
  std::string corpus;
  std::string split_file;
  std::string split;
  std::string preds;
  std::string db;
  std::string out;
  bool strict = false;
  bool breakdown = false;
  int timeout_ms = static_cast<int>(kDefaultQueryTimeout.count());
  int jobs = 1;
};

int RunEval(const EvalArgs& a, std::ostream& out) {
  RequireFile("--corpus", a.corpus);
  RequireFile("--preds", a.preds);
  RequireFile("--db", a.db);
  if (a.out.empty()) throw UsageError("--out is required");
  if (!a.split.empty() && a.split_file.empty()) throw UsageError("--split requires --split-file");
  Manifest m("eval");
  m.AddInput("corpus", a.corpus);
  m.AddInput("preds", a.preds);
  m.AddInput("db", a.db);
  Corpus corpus = LoadCorpus(a.corpus);
  if (!a.split_file.empty()) {
    RequireFile("--split-file", a.split_file);
    m.AddInput("split_file", a.split_file);
    if (!a.split.empty()) {
      corpus = SelectSplit(corpus, ParseSplitFile(ReadFile(a.split_file)), ParseSplitName(a.split));
    }
  }
  m.config() = {{"split", a.split},
                {"strict", a.strict},
                {"breakdown", a.breakdown},
                {"timeout_ms", a.timeout_ms}};
  EvalOptions opts;
  opts.jobs = a.jobs;
  opts.strict = a.strict;
  opts.breakdown = a.breakdown;
  opts.timeout = std::chrono::milliseconds(a.timeout_ms);
  const EvalReport report = Evaluate(corpus, LoadPredictions(a.preds), a.db, opts);
  m.WriteOutput(a.out, EvalReportToJson(report).dump(2) + "\n");
  out << SummaryLine({{"command", "eval"},
                      {"n", report.n},
                      {"acc_lf", report.acc_lf},
                      {"acc_ex", report.acc_ex},
                      {"missing", report.n_missing}});
  return kExitOk;
}

// Flags shared by several commands.
void AddJobs(CLI::App* cmd, int* jobs) {
  cmd->add_option("--jobs,-j", *jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Text-to-SQL dataset and evaluation toolkit for clinical databases", "medsql"};
  app.set_version_flag("--version", kToolVersion);
  app.set_config("--config", "", "TOML or INI file with option values; flags override it");
  app.require_subcommand(1);

  IngestArgs ingest;
  auto* c_ingest = app.add_subcommand("ingest", "Build the execution database and/or import a corpus");
  c_ingest->add_option("--schema", ingest.schema, "Schema file");
  c_ingest->add_option("--corpus", ingest.corpus, "Corpus file to validate and rewrite");
  c_ingest->add_option("--release", ingest.release, "Directory with train/dev/test.json of a release");
  c_ingest->add_option("--natural", ingest.natural, "Directory with the paraphrase release");
  c_ingest->add_option("--tables", ingest.tables, "Directory with one <TABLE>.csv per schema table");
  c_ingest->add_option("--db", ingest.db, "Execution database to create");
  c_ingest->add_option("--out,-o", ingest.out, "Corpus file to write");
  c_ingest->add_option("--ood-questions", ingest.ood_questions, "Out-of-domain questions file");
  c_ingest->add_option("--ood-tables", ingest.ood_tables, "Out-of-domain tables file");
  c_ingest->add_option("--ood-name", ingest.ood_name, "Id prefix for out-of-domain samples")->capture_default_str();
  c_ingest->add_flag("--ood-lenient", ingest.ood_lenient, "Skip malformed out-of-domain records");
  c_ingest->add_option("--schemas-out", ingest.schemas_out, "Where to write out-of-domain schemas");

  StatsArgs stats;
  auto* c_stats = app.add_subcommand("stats", "Corpus statistics");
  c_stats->add_option("--corpus", stats.corpus, "Corpus file");
  c_stats->add_option("--schema", stats.schema, "Schema file");
  c_stats->add_option("--out,-o", stats.out, "Report file (default: standard output)");

  SplitArgs split;
  auto* c_split = app.add_subcommand("split", "Assign TRAIN/DEV/TEST by main and joined tables");
  c_split->add_option("--corpus", split.corpus, "Corpus file");
  c_split->add_option("--schema", split.schema, "Schema file");
  c_split->add_option("--seed", split.seed, "Seed for the DEV/TEST draw")->capture_default_str();
  c_split->add_option("--test-size", split.test_size, "TEST size")->capture_default_str();
  c_split->add_option("--designated", split.designated, "Designated tables (comma separated)");
  c_split->add_option("--out,-o", split.out, "Assignment file");
  c_split->add_option("--report", split.report, "Size report file");
  c_split->add_option("--reference", split.reference, "Reference TRAIN,DEV,TEST sizes to diff against")
      ->delimiter(',');
  AddJobs(c_split, &split.jobs);

  LinearizeArgs lin;
  auto* c_lin = app.add_subcommand("linearize", "Write model inputs and targets");
  c_lin->add_option("--corpus", lin.corpus, "Corpus file");
  c_lin->add_option("--schema", lin.schema, "Schema file");
  c_lin->add_option("--split-file", lin.split_file, "Assignment file from `split`");
  c_lin->add_option("--split", lin.split, "Only this split (TRAIN, DEV or TEST)");
  c_lin->add_option("--question-source", lin.question_source,
                    "template, paraphrase, synthetic or all")->capture_default_str();
  c_lin->add_option("--separator", lin.separator, "Question/schema separator")->capture_default_str();
  c_lin->add_option("--extra-schemas", lin.extra_schemas, "Out-of-domain schemas from `ingest`");
  c_lin->add_option("--out,-o", lin.out, "Training file");

  AugmentArgs aug;
  auto* c_aug = app.add_subcommand("augment", "Back-translate questions or instantiate templates");
  c_aug->add_option("--corpus", aug.corpus, "Corpus file");
  c_aug->add_option("--out,-o", aug.out, "Corpus file to write");
  c_aug->add_option("--pivots", aug.pivots, "Pivot languages")->delimiter(',')->capture_default_str();
  c_aug->add_option("--allowed-pivots", aug.allowed_pivots, "Accepted pivot languages")
      ->delimiter(',')->capture_default_str();
  c_aug->add_flag("--stub", aug.stub, "Use the offline stub translator");
  c_aug->add_option("--url", aug.url, std::string("Translation endpoint (overridden by ") +
                                           kTranslateUrlEnv + ")");
  c_aug->add_option("--timeout-ms", aug.timeout_ms, "Per-request timeout")->capture_default_str();
  c_aug->add_option("--retries", aug.retries, "Retries per request")->capture_default_str();
  c_aug->add_option("--templates", aug.templates, "Template file; switches to template mode");
  c_aug->add_option("--db", aug.db, "Execution database supplying slot values");
  c_aug->add_option("--limit", aug.limit, "Samples per template")->capture_default_str();
  AddJobs(c_aug, &aug.jobs);

  RerankArgs rr;
  auto* c_rr = app.add_subcommand("rerank", "Pick the first executable candidate of each beam");
  c_rr->add_option("--preds", rr.preds, "Beam prediction file");
  c_rr->add_option("--db", rr.db, "Execution database");
  c_rr->add_option("--out,-o", rr.out, "Prediction file to write");
  c_rr->add_flag("--require-nonempty", rr.require_nonempty, "Also reject empty results");
  c_rr->add_option("--timeout-ms", rr.timeout_ms, "Per-query timeout")->capture_default_str();
  AddJobs(c_rr, &rr.jobs);

  RecoverArgs rc;
  auto* c_rc = app.add_subcommand("recover", "Replace condition values with the closest stored value");
  c_rc->add_option("--preds", rc.preds, "Prediction file");
  c_rc->add_option("--db", rc.db, "Execution database");
  c_rc->add_option("--schema", rc.schema, "Schema file (default: the one stored in the database)");
  c_rc->add_option("--out,-o", rc.out, "Prediction file to write");
  c_rc->add_flag("--no-prefilter", rc.no_prefilter, "Score every value of large columns");
  AddJobs(c_rc, &rc.jobs);

  EvalArgs ev;
  auto* c_ev = app.add_subcommand("eval", "Logic-form and execution accuracy");
  c_ev->add_option("--corpus", ev.corpus, "Corpus file");
  c_ev->add_option("--split-file", ev.split_file, "Assignment file from `split`");
  c_ev->add_option("--split", ev.split, "Evaluate only this split");
  c_ev->add_option("--preds", ev.preds, "Prediction file");
  c_ev->add_option("--db", ev.db, "Execution database");
  c_ev->add_option("--out,-o", ev.out, "Report file");
  c_ev->add_flag("--strict", ev.strict, "Fail when a prediction is missing");
  c_ev->add_flag("--breakdown", ev.breakdown, "Per-component accuracy");
  c_ev->add_option("--timeout-ms", ev.timeout_ms, "Per-query timeout")->capture_default_str();
  AddJobs(c_ev, &ev.jobs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::map<CLI::App*, std::function<int()>> commands = {
      {c_ingest, [&] { return RunIngest(ingest, out, err); }},
      {c_stats, [&] { return RunStats(stats, out); }},
      {c_split, [&] { return RunSplit(split, out, err); }},
      {c_lin, [&] { return RunLinearize(lin, out, err); }},
      {c_aug, [&] { return RunAugment(aug, out, err); }},
      {c_rr, [&] { return RunRerank(rr, out); }},
      {c_rc, [&] { return RunRecover(rc, out); }},
      {c_ev, [&] { return RunEval(ev, out); }},
  };
  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  try {
    return commands.at(chosen)();
  } catch (const UsageError& e) {
    err << "medsql " << name << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "medsql " << name << ": " << e.what() << "\n";
    return kExitData;
  } catch (const EnvironmentError& e) {
    err << "medsql " << name << ": " << e.what() << "\n";
    return kExitEnvironment;
  } catch (const Json::exception& e) {
    err << "medsql " << name << ": " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "medsql " << name << ": internal error: " << e.what() << "\n";
    return kExitEnvironment;
  }
}

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv = {"medsql"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace medsql
