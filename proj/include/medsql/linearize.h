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

// Model inputs: "* T1 C1 attr C2 attr T2 ... [SEP] question".

#ifndef MEDSQL_LINEARIZE_H_
#define MEDSQL_LINEARIZE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "medsql/corpus.h"
#include "medsql/schema.h"
#include "medsql/split.h"

namespace medsql {

inline constexpr std::string_view kDefaultSeparator = "[SEP]";

std::string LinearizeSchema(const SchemaDef& schema);

// Throws EmptyQuestion for a blank question and ReservedToken when the
// question or the linearized schema contains the separator.
std::string BuildModelInput(const SchemaDef& schema, std::string_view question,
                            std::string_view separator = kDefaultSeparator);

enum class QuestionSource { kTemplate, kParaphrase, kSynthetic, kAll };

std::string_view QuestionSourceName(QuestionSource source);
QuestionSource ParseQuestionSource(std::string_view name);  // DataError

struct TrainingRecord {
  std::string id;
  std::string variant;  // "template", "paraphrase" or "synthetic:<pivot>"
  std::string input;
  std::string target;
};

struct ExportOptions {
  QuestionSource source = QuestionSource::kTemplate;
  std::string separator = std::string(kDefaultSeparator);
  // Restrict to one split; every sample when unset.
  std::optional<Split> split;
};

struct ExportResult {
  std::vector<TrainingRecord> records;
  std::size_t n_template = 0;
  std::size_t n_paraphrase = 0;
  std::size_t n_synthetic = 0;
  // Samples without a paraphrase when one was requested.
  std::size_t missing_paraphrase = 0;
};

// One record per selected question variant, in corpus order. Samples with
// a schema_ref use the matching entry of `schemas`, others `primary`.
// Throws DataError for unassigned samples (when a split is requested) or an
// unknown schema_ref, and ParseError for a gold query that does not parse.
ExportResult ExportTrainingRecords(const Corpus& corpus,
                                   const SplitAssignment& assignment,
                                   const SchemaDef& primary,
                                   const std::map<std::string, SchemaDef>& schemas,
                                   const ExportOptions& options);

// Line-delimited {"id", "variant", "input", "target"}.
std::string FormatTrainingFile(const std::vector<TrainingRecord>& records);

}  // namespace medsql

#endif  // MEDSQL_LINEARIZE_H_
