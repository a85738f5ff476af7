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

#include "medsql/predictions.h"

#include <algorithm>
#include <unordered_set>

#include "medsql/errors.h"
#include "medsql/file_util.h"
#include "medsql/strings.h"

namespace medsql {
namespace {

std::string NonEmptySql(const Json& j) {
  std::string sql = j.get<std::string>();
  if (NormalizeWhitespace(sql).empty()) throw DataError("empty SQL string");
  return sql;
}

Prediction PredictionFromJson(const Json& j) {
  if (!j.is_object()) throw DataError("record is not an object");
  Prediction p;
  p.id = j.at("id").get<std::string>();
  if (p.id.empty()) throw DataError("empty id");
  if (j.contains("sql")) p.sql = NonEmptySql(j["sql"]);
  if (j.contains("candidates")) {
    const Json& list = j["candidates"];
    if (!list.is_array() || list.empty()) {
      throw DataError("\"candidates\" must be a non-empty list");
    }
    for (const Json& c : list) {
      p.candidates.push_back({NonEmptySql(c.at("sql")), c.at("score").get<double>()});
    }
    SortCandidates(&p.candidates);
  }
  if (!p.sql && p.candidates.empty()) {
    throw DataError("record has neither \"sql\" nor \"candidates\"");
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() != "id" && it.key() != "sql" && it.key() != "candidates") {
      p.extra[it.key()] = it.value();
    }
  }
  return p;
}

Json PredictionToJson(const Prediction& p) {
  Json j = {{"id", p.id}};
  if (p.sql) j["sql"] = *p.sql;
  if (!p.candidates.empty()) {
    Json list = Json::array();
    for (const Candidate& c : p.candidates) {
      list.push_back({{"sql", c.sql}, {"score", c.score}});
    }
    j["candidates"] = std::move(list);
  }
  for (auto it = p.extra.begin(); it != p.extra.end(); ++it) {
    j[it.key()] = it.value();
  }
  return j;
}

}  // namespace

const std::string& Prediction::Best() const {
  return sql ? *sql : candidates.front().sql;
}

void SortCandidates(std::vector<Candidate>* candidates) {
  std::stable_sort(candidates->begin(), candidates->end(),
                   [](const Candidate& a, const Candidate& b) {
                     return a.score > b.score;
                   });
}

PredictionFile ParsePredictions(std::string_view contents) {
  PredictionFile out;
  std::unordered_set<std::string> ids;
  std::size_t line_no = 0;
  for (const std::string& line : SplitOn(contents, '\n')) {
    ++line_no;
    if (NormalizeWhitespace(line).empty()) continue;
    Prediction p;
    try {
      p = PredictionFromJson(Json::parse(line));
    } catch (const Json::exception& e) {
      throw RecordError(line_no, e.what());
    } catch (const DataError& e) {
      throw RecordError(line_no, e.what());
    }
    if (!ids.insert(p.id).second) {
      throw RecordError(line_no, "duplicate id '" + p.id + "'");
    }
    out.push_back(std::move(p));
  }
  return out;
}

PredictionFile LoadPredictions(const std::filesystem::path& path) {
  return ParsePredictions(ReadFile(path));
}

std::string FormatPredictions(const PredictionFile& preds) {
  std::string out;
  for (const Prediction& p : preds) {
    out += PredictionToJson(p).dump();
    out += '\n';
  }
  return out;
}

void SavePredictions(const std::filesystem::path& path,
                     const PredictionFile& preds) {
  WriteFileAtomic(path, FormatPredictions(preds));
}

}  // namespace medsql
