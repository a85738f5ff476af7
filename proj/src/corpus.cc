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

#include "medsql/corpus.h"

#include <cstdio>
#include <set>
#include <unordered_set>
#include <utility>

#include "medsql/errors.h"
#include "medsql/file_util.h"
#include "medsql/sql.h"
#include "medsql/strings.h"

namespace medsql {
namespace {

constexpr const char* kKnownFields[] = {"id",        "question_template",
                                        "question_paraphrase", "synthetic",
                                        "sql",       "schema"};

bool IsKnownField(const std::string& key) {
  for (const char* f : kKnownFields) {
    if (key == f) return true;
  }
  return false;
}

std::string RequireString(const Json& json, const char* key) {
  auto it = json.find(key);
  if (it == json.end()) throw DataError(std::string("missing field '") + key + "'");
  if (!it->is_string()) {
    throw DataError(std::string("field '") + key + "' is not a string");
  }
  return it->get<std::string>();
}

// Releases disagree on DIAGNOSIS vs DIAGNOSES; the schema decides.
std::string NormalizeTableName(const std::string& name,
                               const SchemaDef& schema) {
  if (const TableDef* t = schema.FindTable(name)) return t->name;
  static const std::pair<const char*, const char*> kAliases[] = {
      {"DIAGNOSIS", "DIAGNOSES"}, {"DIAGNOSES", "DIAGNOSIS"}};
  for (const auto& [from, to] : kAliases) {
    if (EqualsIgnoreCase(name, from)) {
      if (const TableDef* t = schema.FindTable(to)) return t->name;
    }
  }
  return name;
}

void NormalizeTables(SqlQuery* q, const SchemaDef& schema) {
  auto fix_ref = [&](ColumnRef* ref) {
    if (!ref->table.empty()) ref->table = NormalizeTableName(ref->table, schema);
  };
  q->main_table = NormalizeTableName(q->main_table, schema);
  for (auto& item : q->select_items) fix_ref(&item.column);
  for (auto& j : q->joins) {
    j.table = NormalizeTableName(j.table, schema);
    fix_ref(&j.left);
    fix_ref(&j.right);
  }
  for (auto& c : q->conditions) fix_ref(&c.column);
}

std::vector<Json> ReadJsonLines(const std::filesystem::path& path) {
  const std::string contents = ReadFile(path);
  std::vector<Json> out;
  std::size_t line_no = 0;
  for (const std::string& line : SplitOn(contents, '\n')) {
    ++line_no;
    if (NormalizeWhitespace(line).empty()) continue;
    try {
      out.push_back(Json::parse(line));
    } catch (const Json::exception& e) {
      throw RecordError(line_no, path.filename().string() + ": " + e.what());
    }
  }
  return out;
}

std::string FirstString(const Json& json, std::initializer_list<const char*> keys) {
  for (const char* k : keys) {
    auto it = json.find(k);
    if (it != json.end() && it->is_string()) return it->get<std::string>();
  }
  return {};
}

std::string ZeroPad(std::size_t v, int width) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%0*zu", width, v);
  return buf;
}

}  // namespace

Json SampleToJson(const Sample& sample) {
  Json j;
  j["id"] = sample.id;
  j["question_template"] = sample.template_question;
  if (sample.paraphrase_question) {
    j["question_paraphrase"] = *sample.paraphrase_question;
  }
  Json synthetic = Json::array();
  for (const auto& s : sample.synthetic) {
    synthetic.push_back({{"text", s.text}, {"pivot", s.pivot}});
  }
  j["synthetic"] = std::move(synthetic);
  j["sql"] = sample.gold_sql;
  if (sample.schema_ref) j["schema"] = *sample.schema_ref;
  for (auto it = sample.extra.begin(); it != sample.extra.end(); ++it) {
    j[it.key()] = it.value();
  }
  return j;
}

Sample SampleFromJson(const Json& json) {
  if (!json.is_object()) throw DataError("record is not a JSON object");
  Sample s;
  s.id = RequireString(json, "id");
  if (s.id.empty()) throw DataError("empty id");
  s.template_question = RequireString(json, "question_template");
  if (NormalizeWhitespace(s.template_question).empty()) {
    throw DataError("empty question_template");
  }
  if (auto it = json.find("question_paraphrase");
      it != json.end() && !it->is_null()) {
    if (!it->is_string()) {
      throw DataError("field 'question_paraphrase' is not a string");
    }
    s.paraphrase_question = it->get<std::string>();
  }
  if (auto it = json.find("synthetic"); it != json.end() && !it->is_null()) {
    if (!it->is_array()) throw DataError("field 'synthetic' is not a list");
    for (const auto& entry : *it) {
      if (!entry.is_object()) throw DataError("synthetic entry is not an object");
      s.synthetic.push_back(
          {RequireString(entry, "text"), RequireString(entry, "pivot")});
    }
  }
  s.gold_sql = RequireString(json, "sql");
  if (auto it = json.find("schema"); it != json.end() && !it->is_null()) {
    if (!it->is_string()) throw DataError("field 'schema' is not a string");
    s.schema_ref = it->get<std::string>();
  }
  for (auto it = json.begin(); it != json.end(); ++it) {
    if (!IsKnownField(it.key())) s.extra[it.key()] = it.value();
  }
  return s;
}

Corpus ParseCorpus(std::string_view contents) {
  Corpus corpus;
  std::unordered_set<std::string> ids;
  std::size_t line_no = 0;
  for (const std::string& line : SplitOn(contents, '\n')) {
    ++line_no;
    if (NormalizeWhitespace(line).empty()) continue;
    Sample sample;
    try {
      sample = SampleFromJson(Json::parse(line));
      ParseSql(sample.gold_sql);
    } catch (const Json::exception& e) {
      throw RecordError(line_no, e.what());
    } catch (const DataError& e) {
      throw RecordError(line_no, e.what());
    }
    if (!ids.insert(sample.id).second) {
      throw RecordError(line_no, "duplicate id '" + sample.id + "'");
    }
    corpus.push_back(std::move(sample));
  }
  return corpus;
}

Corpus LoadCorpus(const std::filesystem::path& path) {
  return ParseCorpus(ReadFile(path));
}

std::string FormatCorpus(const Corpus& corpus) {
  std::string out;
  for (const auto& s : corpus) {
    out += SampleToJson(s).dump();
    out += '\n';
  }
  return out;
}

void SaveCorpus(const std::filesystem::path& path, const Corpus& corpus) {
  WriteFileAtomic(path, FormatCorpus(corpus));
}

Corpus ImportMimicsqlRelease(
    const std::filesystem::path& template_dir,
    const std::optional<std::filesystem::path>& natural_dir,
    const SchemaDef& schema) {
  Corpus corpus;
  std::unordered_set<std::string> ids;
  for (const char* split : {"train", "dev", "test"}) {
    const auto template_file = template_dir / (std::string(split) + ".json");
    if (!std::filesystem::exists(template_file)) continue;
    std::map<std::string, std::string> paraphrases;
    if (natural_dir) {
      const auto natural_file = *natural_dir / (std::string(split) + ".json");
      if (std::filesystem::exists(natural_file)) {
        for (const Json& rec : ReadJsonLines(natural_file)) {
          const std::string key = FirstString(rec, {"key", "id"});
          if (!key.empty()) {
            paraphrases[key] = FirstString(rec, {"question_refine", "question"});
          }
        }
      }
    }
    std::size_t index = 0;
    for (const Json& rec : ReadJsonLines(template_file)) {
      ++index;
      Sample s;
      s.id = FirstString(rec, {"key", "id"});
      if (s.id.empty()) s.id = std::string(split) + "-" + ZeroPad(index, 5);
      s.template_question = FirstString(rec, {"question_refine", "question"});
      const std::string sql = FirstString(rec, {"sql", "query"});
      try {
        if (NormalizeWhitespace(s.template_question).empty()) {
          throw DataError("empty question");
        }
        SqlQuery q = ParseSql(sql);
        NormalizeTables(&q, schema);
        s.gold_sql = SerializeSql(q);
      } catch (const DataError& e) {
        throw RecordError(index, template_file.filename().string() + ": " +
                                     e.what());
      }
      if (auto it = paraphrases.find(s.id); it != paraphrases.end()) {
        s.paraphrase_question = it->second;
      }
      s.extra["original_split"] = split;
      if (!ids.insert(s.id).second) {
        throw RecordError(index, "duplicate id '" + s.id + "'");
      }
      corpus.push_back(std::move(s));
    }
  }
  if (corpus.empty()) {
    throw IoError("no train/dev/test.json found under " +
                  template_dir.string());
  }
  return corpus;
}

MergeResult MergeOutOfDomain(const Corpus& primary,
                             const std::filesystem::path& questions_path,
                             const std::filesystem::path& tables_path,
                             const MergeOptions& options) {
  MergeResult result;
  result.samples = primary;

  Json tables;
  Json questions;
  try {
    tables = Json::parse(ReadFile(tables_path));
    questions = Json::parse(ReadFile(questions_path));
  } catch (const Json::exception& e) {
    throw DataError(std::string("malformed external corpus: ") + e.what());
  }
  if (!tables.is_array() || !questions.is_array()) {
    throw DataError("external corpus files must hold JSON arrays");
  }

  for (const Json& db : tables) {
    SchemaDef schema;
    try {
      const auto& names = db.at("table_names_original");
      for (const auto& n : names) schema.tables.push_back({n.get<std::string>(), {}});
      const auto& cols = db.at("column_names_original");
      const auto& types = db.at("column_types");
      for (std::size_t i = 0; i < cols.size(); ++i) {
        const int table_index = cols[i].at(0).get<int>();
        if (table_index < 0) continue;  // the "*" pseudo-column
        const std::string type = i < types.size() ? types[i].get<std::string>() : "text";
        ColumnAttr attr = ColumnAttr::kText;
        if (type == "number") attr = ColumnAttr::kNumber;
        if (type == "time") attr = ColumnAttr::kDatetime;
        schema.tables.at(static_cast<std::size_t>(table_index))
            .columns.push_back({cols[i].at(1).get<std::string>(), attr});
      }
      ValidateSchema(schema);
      result.schemas[options.corpus_name + ":" + db.at("db_id").get<std::string>()] =
          std::move(schema);
    } catch (const Json::exception& e) {
      throw DataError(std::string("malformed external schema: ") + e.what());
    } catch (const std::out_of_range& e) {
      throw DataError(std::string("malformed external schema: ") + e.what());
    }
  }

  std::unordered_set<std::string> ids;
  for (const auto& s : primary) ids.insert(s.id);

  const int width = questions.size() >= 1000000 ? 8 : 6;
  for (std::size_t i = 0; i < questions.size(); ++i) {
    const Json& rec = questions[i];
    const std::string id = options.corpus_name + ":" + ZeroPad(i, width);
    if (!ids.insert(id).second) {
      throw DataError("external id '" + id + "' collides with a primary id");
    }
    try {
      Sample s;
      s.id = id;
      s.template_question = rec.at("question").get<std::string>();
      if (NormalizeWhitespace(s.template_question).empty()) {
        throw DataError("empty question");
      }
      const std::string db_id = rec.at("db_id").get<std::string>();
      const std::string schema_ref = options.corpus_name + ":" + db_id;
      if (!result.schemas.count(schema_ref)) {
        throw DataError("unknown db_id '" + db_id + "'");
      }
      s.schema_ref = schema_ref;
      s.gold_sql = SerializeSql(ParseSql(rec.at("query").get<std::string>()));
      result.samples.push_back(std::move(s));
      ++result.converted;
    } catch (const std::exception& e) {
      if (!options.lenient) throw RecordError(i + 1, e.what());
      ++result.skipped;
      result.skip_reasons.push_back(std::to_string(i + 1) + ": " + e.what());
    }
  }
  return result;
}

}  // namespace medsql
