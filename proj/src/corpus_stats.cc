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

#include "medsql/corpus_stats.h"

#include <cmath>

#include "medsql/errors.h"
#include "medsql/sql.h"
#include "medsql/strings.h"

namespace medsql {
namespace {

// Integer totals keep the averages exact under corpus repetition.
double Mean(std::size_t total, std::size_t count) {
  return count == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(count);
}

double Round2(double v) { return std::round(v * 100.0) / 100.0; }

}  // namespace

CorpusStats ComputeCorpusStats(const Corpus& corpus, const SchemaDef& schema) {
  if (corpus.empty()) throw EmptyCorpus();
  CorpusStats stats;
  stats.n_samples = corpus.size();
  stats.n_tables = schema.tables.size();
  for (const TableDef& t : schema.tables) {
    stats.columns_per_table.emplace_back(t.name, t.columns.size());
  }
  std::size_t template_words = 0, paraphrase_words = 0, sql_tokens = 0,
              select_items = 0, conditions = 0;
  for (const Sample& s : corpus) {
    template_words += SplitWhitespace(s.template_question).size();
    if (s.paraphrase_question) {
      ++stats.n_paraphrases;
      paraphrase_words += SplitWhitespace(*s.paraphrase_question).size();
    }
    sql_tokens += TokenizeSql(s.gold_sql).tokens.size();
    const SqlQuery q = ParseSql(s.gold_sql);
    select_items += q.select_items.size();
    conditions += q.conditions.size();
  }
  stats.avg_template_question_len = Mean(template_words, corpus.size());
  stats.avg_paraphrase_question_len = Mean(paraphrase_words, stats.n_paraphrases);
  stats.avg_sql_len = Mean(sql_tokens, corpus.size());
  stats.avg_agg_columns = Mean(select_items, corpus.size());
  stats.avg_conditions = Mean(conditions, corpus.size());
  return stats;
}

Json CorpusStatsToJson(const CorpusStats& stats) {
  Json columns = Json::object();
  for (const auto& [name, n] : stats.columns_per_table) columns[name] = n;
  return Json{
      {"format_version", kFormatVersion},
      {"n_samples", stats.n_samples},
      {"n_tables", stats.n_tables},
      {"columns_per_table", std::move(columns)},
      {"n_paraphrases", stats.n_paraphrases},
      {"avg_template_question_len", Round2(stats.avg_template_question_len)},
      {"avg_paraphrase_question_len", Round2(stats.avg_paraphrase_question_len)},
      {"avg_sql_len", Round2(stats.avg_sql_len)},
      {"avg_agg_columns", Round2(stats.avg_agg_columns)},
      {"avg_conditions", Round2(stats.avg_conditions)},
  };
}

}  // namespace medsql
