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

#ifndef MEDSQL_CORPUS_STATS_H_
#define MEDSQL_CORPUS_STATS_H_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "medsql/corpus.h"
#include "medsql/json.h"
#include "medsql/schema.h"

namespace medsql {

struct CorpusStats {
  std::size_t n_samples = 0;
  std::size_t n_tables = 0;
  std::vector<std::pair<std::string, std::size_t>> columns_per_table;
  // Question lengths are whitespace-separated words. The paraphrase
  // average covers only samples that have a paraphrase.
  std::size_t n_paraphrases = 0;
  double avg_template_question_len = 0;
  double avg_paraphrase_question_len = 0;
  double avg_sql_len = 0;  // TokenizeSql tokens
  double avg_agg_columns = 0;  // SELECT items
  double avg_conditions = 0;
};

// Throws EmptyCorpus, and ParseError for unparseable gold SQL.
CorpusStats ComputeCorpusStats(const Corpus& corpus, const SchemaDef& schema);

// Averages rounded to two decimals.
Json CorpusStatsToJson(const CorpusStats& stats);

}  // namespace medsql

#endif  // MEDSQL_CORPUS_STATS_H_
