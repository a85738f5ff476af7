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

// Benchmark corpora in the canonical line-delimited format:
//
//   {"id": "...", "question_template": "...", "question_paraphrase": "...",
//    "synthetic": [{"text": "...", "pivot": "fr"}], "sql": "...",
//    "schema": "spider:concert_singer"}
//
// "question_paraphrase" and "schema" are optional. Unknown fields survive a
// load/save round trip in their original order after the known ones.

#ifndef MEDSQL_CORPUS_H_
#define MEDSQL_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "medsql/json.h"
#include "medsql/schema.h"

namespace medsql {

struct SyntheticParaphrase {
  std::string text;
  std::string pivot;  // language code of the round-trip pivot
  friend bool operator==(const SyntheticParaphrase&,
                         const SyntheticParaphrase&) = default;
};

struct Sample {
  std::string id;
  std::string template_question;
  std::optional<std::string> paraphrase_question;
  std::vector<SyntheticParaphrase> synthetic;
  std::string gold_sql;
  // Key of the schema to linearize with, for samples merged from an
  // out-of-domain corpus. Empty means the primary schema.
  std::optional<std::string> schema_ref;
  Json extra = Json::object();

  friend bool operator==(const Sample&, const Sample&) = default;
};

using Corpus = std::vector<Sample>;

Json SampleToJson(const Sample& sample);
// Throws DataError on missing or mistyped fields. Does not parse the SQL.
Sample SampleFromJson(const Json& json);

// Parses line-delimited records; blank lines are skipped but counted.
// Every gold query must parse and ids must be unique. Throws RecordError
// with the 1-based line number.
Corpus ParseCorpus(std::string_view contents);
Corpus LoadCorpus(const std::filesystem::path& path);

std::string FormatCorpus(const Corpus& corpus);
void SaveCorpus(const std::filesystem::path& path, const Corpus& corpus);

// Import shim for the original MIMICSQL release layout: `template_dir` (and
// optionally `natural_dir`) hold train.json / dev.json / test.json with one
// JSON object per line carrying "key", "question_refine" (or "question")
// and "sql". Paraphrases are joined on "key". Table names are normalized to
// the schema's spelling (DIAGNOSIS vs DIAGNOSES) and gold SQL is stored in
// canonical form. The original split lands in the extra field
// "original_split".
Corpus ImportMimicsqlRelease(const std::filesystem::path& template_dir,
                             const std::optional<std::filesystem::path>& natural_dir,
                             const SchemaDef& schema);

struct MergeOptions {
  std::string corpus_name = "spider";
  // Skip and count unconvertible records instead of failing.
  bool lenient = false;
};

struct MergeResult {
  Corpus samples;  // primary first, then converted external records
  std::map<std::string, SchemaDef> schemas;  // keyed by Sample::schema_ref
  std::size_t converted = 0;
  std::size_t skipped = 0;
  std::vector<std::string> skip_reasons;
};

// Appends an out-of-domain corpus in Spider layout: `questions_path` is a
// JSON array of {"db_id", "question", "query"} and `tables_path` the
// matching tables.json. Converted ids are "<corpus_name>:<index>" and each
// sample references the schema "<corpus_name>:<db_id>". Records whose SQL
// falls outside the dialect raise RecordError (1-based record index) unless
// options.lenient is set.
MergeResult MergeOutOfDomain(const Corpus& primary,
                             const std::filesystem::path& questions_path,
                             const std::filesystem::path& tables_path,
                             const MergeOptions& options = {});

}  // namespace medsql

#endif  // MEDSQL_CORPUS_H_
