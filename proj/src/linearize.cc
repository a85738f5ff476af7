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

#include "medsql/linearize.h"

#include "medsql/errors.h"
#include "medsql/json.h"
#include "medsql/sql.h"
#include "medsql/strings.h"

namespace medsql {

std::string LinearizeSchema(const SchemaDef& schema) {
  std::string out = "*";
  for (const TableDef& t : schema.tables) {
    out += ' ';
    out += t.name;
    for (const ColumnDef& c : t.columns) {
      out += ' ';
      out += c.name;
      out += ' ';
      out += ColumnAttrName(c.attr);
    }
  }
  return out;
}

std::string BuildModelInput(const SchemaDef& schema, std::string_view question,
                            std::string_view separator) {
  if (NormalizeWhitespace(question).empty()) throw EmptyQuestion();
  if (question.find(separator) != std::string_view::npos) {
    throw ReservedToken("question contains the separator " + std::string(separator));
  }
  std::string out = LinearizeSchema(schema);
  if (out.find(separator) != std::string::npos) {
    throw ReservedToken("schema contains the separator " + std::string(separator));
  }
  out += ' ';
  out += separator;
  out += ' ';
  out += question;
  return out;
}

std::string_view QuestionSourceName(QuestionSource source) {
  switch (source) {
    case QuestionSource::kTemplate:
      return "template";
    case QuestionSource::kParaphrase:
      return "paraphrase";
    case QuestionSource::kSynthetic:
      return "synthetic";
    case QuestionSource::kAll:
      return "all";
  }
  return "";
}

QuestionSource ParseQuestionSource(std::string_view name) {
  for (QuestionSource s : {QuestionSource::kTemplate, QuestionSource::kParaphrase,
                           QuestionSource::kSynthetic, QuestionSource::kAll}) {
    if (EqualsIgnoreCase(name, QuestionSourceName(s))) return s;
  }
  throw DataError("unknown question source '" + std::string(name) + "'");
}

ExportResult ExportTrainingRecords(const Corpus& corpus,
                                   const SplitAssignment& assignment,
                                   const SchemaDef& primary,
                                   const std::map<std::string, SchemaDef>& schemas,
                                   const ExportOptions& options) {
  const Corpus selected =
      options.split ? SelectSplit(corpus, assignment, *options.split) : corpus;
  const QuestionSource src = options.source;
  const bool want_template = src == QuestionSource::kTemplate || src == QuestionSource::kAll;
  const bool want_paraphrase =
      src == QuestionSource::kParaphrase || src == QuestionSource::kAll;
  const bool want_synthetic =
      src == QuestionSource::kSynthetic || src == QuestionSource::kAll;

  ExportResult out;
  for (const Sample& s : selected) {
    const SchemaDef* schema = &primary;
    if (s.schema_ref) {
      auto it = schemas.find(*s.schema_ref);
      if (it == schemas.end()) {
        throw DataError("sample '" + s.id + "' references unknown schema '" +
                        *s.schema_ref + "'");
      }
      schema = &it->second;
    }
    ParseSql(s.gold_sql);
    const std::string& target = s.gold_sql;
    auto emit = [&](std::string variant, const std::string& question) {
      out.records.push_back({s.id, std::move(variant),
                             BuildModelInput(*schema, question, options.separator),
                             target});
    };
    if (want_template) {
      emit("template", s.template_question);
      ++out.n_template;
    }
    if (want_paraphrase) {
      if (s.paraphrase_question) {
        emit("paraphrase", *s.paraphrase_question);
        ++out.n_paraphrase;
      } else {
        ++out.missing_paraphrase;
      }
    }
    if (want_synthetic) {
      for (const SyntheticParaphrase& p : s.synthetic) {
        emit("synthetic:" + p.pivot, p.text);
        ++out.n_synthetic;
      }
    }
  }
  return out;
}

std::string FormatTrainingFile(const std::vector<TrainingRecord>& records) {
  std::string out;
  for (const TrainingRecord& r : records) {
    out += Json{{"id", r.id}, {"variant", r.variant}, {"input", r.input},
                {"target", r.target}}
               .dump();
    out += '\n';
  }
  return out;
}

}  // namespace medsql
