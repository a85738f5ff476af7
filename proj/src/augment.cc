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

#include "medsql/augment.h"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <thread>
#include <utility>

#include "httplib.h"
#include "medsql/errors.h"
#include "medsql/file_util.h"
#include "medsql/parallel.h"
#include "medsql/sql.h"
#include "medsql/strings.h"

namespace medsql {
namespace {

constexpr std::size_t kErrorExcerpt = 200;

std::string StubTag(std::string_view pivot) {
  return "[" + std::string(pivot) + "]";
}

bool IsSlotChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Placeholders in order of appearance, with their byte spans.
struct SlotUse {
  std::size_t begin;
  std::size_t end;
  std::string name;
};

std::vector<SlotUse> FindSlots(std::string_view pattern) {
  std::vector<SlotUse> uses;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] != '[') continue;
    std::size_t j = i + 1;
    while (j < pattern.size() && IsSlotChar(pattern[j])) ++j;
    if (j > i + 1 && j < pattern.size() && pattern[j] == ']') {
      uses.push_back({i, j + 1, std::string(pattern.substr(i + 1, j - i - 1))});
      i = j;
    }
  }
  return uses;
}

std::string Substitute(std::string_view pattern, const std::vector<SlotUse>& uses,
                       const std::map<std::string, std::string>& values) {
  std::string out;
  std::size_t pos = 0;
  for (const auto& u : uses) {
    out.append(pattern.substr(pos, u.begin - pos));
    out += values.at(u.name);
    pos = u.end;
  }
  out.append(pattern.substr(pos));
  return out;
}

void CheckTemplate(const QuestionTemplate& t) {
  const auto text_uses = FindSlots(t.text_pattern);
  const auto sql_uses = FindSlots(t.sql_pattern);
  std::set<std::string> in_text;
  std::set<std::string> in_sql;
  for (const auto& u : text_uses) in_text.insert(u.name);
  for (const auto& u : sql_uses) in_sql.insert(u.name);
  for (const auto* names : {&in_text, &in_sql}) {
    for (const auto& n : *names) {
      if (!t.slots.count(n)) {
        throw UnboundSlot("template '" + t.id + "': slot [" + n + "] has no binding");
      }
    }
  }
  for (const auto& [name, binding] : t.slots) {
    if (!in_text.count(name) || !in_sql.count(name)) {
      throw DataError("template '" + t.id + "': slot [" + name +
                      "] must appear in both the question and the SQL");
    }
  }
}

}  // namespace

HttpTranslator::HttpTranslator(TranslatorEndpoint endpoint)
    : endpoint_(std::move(endpoint)) {
  const std::string& url = endpoint_.base_url;
  constexpr std::string_view kScheme = "http://";
  if (url.rfind("https://", 0) == 0) {
    throw DataError("translation endpoint: https is not supported, use http");
  }
  if (url.rfind(kScheme, 0) != 0 || url.size() == kScheme.size()) {
    throw DataError("translation endpoint must look like http://host[:port][/path]: '" +
                    url + "'");
  }
  if (endpoint_.retries < 0) throw DataError("translation retries must be >= 0");
  if (endpoint_.timeout.count() <= 0) throw DataError("translation timeout must be > 0");
  const std::size_t slash = url.find('/', kScheme.size());
  host_ = url.substr(0, slash);
  std::string prefix = slash == std::string::npos ? "" : url.substr(slash);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  path_ = prefix + "/translate";
}

std::string HttpTranslator::Translate(std::string_view text, std::string_view src,
                                      std::string_view tgt) const {
  const std::string body =
      Json{{"text", text}, {"src", src}, {"tgt", tgt}}.dump();
  const auto seconds = [](std::chrono::milliseconds ms) {
    return std::make_pair(static_cast<time_t>(ms.count() / 1000),
                          static_cast<time_t>((ms.count() % 1000) * 1000));
  };
  const auto [sec, usec] = seconds(endpoint_.timeout);

  int status = 0;
  std::string detail;
  for (int attempt = 0; attempt <= endpoint_.retries; ++attempt) {
    if (attempt > 0 && endpoint_.backoff.count() > 0) {
      std::this_thread::sleep_for(endpoint_.backoff * attempt);
    }
    httplib::Client client(host_);
    client.set_connection_timeout(sec, usec);
    client.set_read_timeout(sec, usec);
    client.set_write_timeout(sec, usec);
    auto res = client.Post(path_, body, "application/json");
    if (!res) {
      status = 0;
      detail = httplib::to_string(res.error());
      continue;
    }
    status = res->status;
    if (status != 200) {
      detail = res->body.substr(0, kErrorExcerpt);
      continue;
    }
    Json reply;
    try {
      reply = Json::parse(res->body);
    } catch (const Json::exception&) {
      throw TranslateError(200, "response is not JSON: " +
                                    res->body.substr(0, kErrorExcerpt));
    }
    auto it = reply.find("text");
    if (!reply.is_object() || it == reply.end() || !it->is_string()) {
      throw TranslateError(200, "response has no \"text\" string");
    }
    return it->get<std::string>();
  }
  throw TranslateError(status, std::to_string(endpoint_.retries + 1) +
                                   " attempt(s) to " + host_ + path_ + ": " + detail);
}

const std::map<std::string, std::string>& StubTranslator::Rewrites(std::string_view pivot) {
  static const std::map<std::string, std::map<std::string, std::string>> kTables = {
      {"fr",
       {{"patients", "people"},
        {"number", "count"},
        {"specify", "state"},
        {"provide", "give"},
        {"mention", "state"},
        {"died", "expired"}}},
      {"de",
       {{"patients", "subjects"},
        {"get", "obtain"},
        {"find", "retrieve"},
        {"number", "total"},
        {"admitted", "hospitalized"},
        {"maximum", "highest"},
        {"minimum", "lowest"}}},
  };
  static const std::map<std::string, std::string> kNone;
  auto it = kTables.find(std::string(pivot));
  return it == kTables.end() ? kNone : it->second;
}

std::string StubTranslator::Translate(std::string_view text, std::string_view src,
                                      std::string_view tgt) const {
  std::vector<std::string> words = SplitWhitespace(text);
  if (src == "en" && tgt != "en") {
    std::reverse(words.begin(), words.end());
    words.insert(words.begin(), StubTag(tgt));
    return Join(words, " ");
  }
  if (src != "en" && tgt == "en") {
    if (!words.empty() && words.front() == StubTag(src)) words.erase(words.begin());
    std::reverse(words.begin(), words.end());
    const auto& table = Rewrites(src);
    for (std::string& w : words) {
      std::size_t stem_end = w.size();
      while (stem_end > 0 && std::ispunct(static_cast<unsigned char>(w[stem_end - 1]))) {
        --stem_end;
      }
      auto it = table.find(AsciiLower(w.substr(0, stem_end)));
      if (it == table.end()) continue;
      std::string replacement = it->second;
      if (std::isupper(static_cast<unsigned char>(w[0]))) {
        replacement[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(replacement[0])));
      }
      w = replacement + w.substr(stem_end);
    }
    return Join(words, " ");
  }
  return std::string(text);
}

std::string BackTranslate(std::string_view question, std::string_view pivot,
                          const Translator& translator,
                          const std::vector<std::string>& allowed_pivots) {
  if (std::find(allowed_pivots.begin(), allowed_pivots.end(), pivot) ==
      allowed_pivots.end()) {
    throw InvalidPivot("pivot language '" + std::string(pivot) + "' is not allowed");
  }
  const std::string there = translator.Translate(question, "en", pivot);
  return NormalizeWhitespace(translator.Translate(there, pivot, "en"));
}

AugmentResult AugmentCorpus(const Corpus& corpus, const std::vector<std::string>& pivots,
                            const Translator& translator, const AugmentOptions& options) {
  std::vector<std::string> unique_pivots;
  for (const auto& p : pivots) {
    if (std::find(options.allowed_pivots.begin(), options.allowed_pivots.end(), p) ==
        options.allowed_pivots.end()) {
      throw InvalidPivot("pivot language '" + p + "' is not allowed");
    }
    if (std::find(unique_pivots.begin(), unique_pivots.end(), p) == unique_pivots.end()) {
      unique_pivots.push_back(p);
    }
  }

  struct Outcome {
    std::optional<std::string> text;
    std::optional<std::string> error;
  };
  std::vector<std::vector<Outcome>> outcomes(corpus.size());
  ParallelFor(
      corpus.size(), options.jobs, [] { return 0; },
      [&](int&, std::size_t i) {
        const std::string source = NormalizeWhitespace(corpus[i].template_question);
        for (const auto& pivot : unique_pivots) {
          Outcome o;
          try {
            std::string round_trip =
                BackTranslate(source, pivot, translator, options.allowed_pivots);
            if (round_trip.empty()) {
              o.error = "empty translation";
            } else if (round_trip != source) {
              o.text = std::move(round_trip);
            }
          } catch (const TranslateError& e) {
            o.error = e.what();
          }
          outcomes[i].push_back(std::move(o));
        }
      });

  AugmentResult result;
  result.corpus = corpus;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    Sample& s = result.corpus[i];
    for (std::size_t k = 0; k < unique_pivots.size(); ++k) {
      const std::string& pivot = unique_pivots[k];
      const Outcome& o = outcomes[i][k];
      if (o.error) {
        result.failures.push_back({s.id, pivot, *o.error});
        continue;
      }
      std::erase_if(s.synthetic, [&](const SyntheticParaphrase& p) { return p.pivot == pivot; });
      if (o.text) {
        s.synthetic.push_back({*o.text, pivot});
        ++result.added;
      } else {
        ++result.degenerate;
      }
    }
  }
  return result;
}

std::vector<QuestionTemplate> TemplatesFromJson(const Json& json) {
  if (!json.is_object()) throw DataError("template file must hold a JSON object");
  auto list = json.find("templates");
  if (list == json.end() || !list->is_array()) {
    throw DataError("template file has no \"templates\" list");
  }
  std::vector<QuestionTemplate> out;
  std::set<std::string> ids;
  try {
    for (const Json& entry : *list) {
      QuestionTemplate t;
      t.id = entry.at("id").get<std::string>();
      t.text_pattern = entry.at("text").get<std::string>();
      t.sql_pattern = entry.at("sql").get<std::string>();
      if (auto slots = entry.find("slots"); slots != entry.end()) {
        for (auto it = slots->begin(); it != slots->end(); ++it) {
          t.slots[it.key()] = {it.value().at("table").get<std::string>(),
                               it.value().at("column").get<std::string>()};
        }
      }
      if (t.id.empty()) throw DataError("template with an empty id");
      if (!ids.insert(t.id).second) throw DataError("duplicate template id '" + t.id + "'");
      CheckTemplate(t);
      out.push_back(std::move(t));
    }
  } catch (const Json::exception& e) {
    throw DataError(std::string("malformed template: ") + e.what());
  }
  return out;
}

Json TemplatesToJson(const std::vector<QuestionTemplate>& templates) {
  Json list = Json::array();
  for (const auto& t : templates) {
    Json slots = Json::object();
    for (const auto& [name, b] : t.slots) {
      slots[name] = {{"table", b.table}, {"column", b.column}};
    }
    list.push_back(
        {{"id", t.id}, {"text", t.text_pattern}, {"sql", t.sql_pattern}, {"slots", slots}});
  }
  return {{"format_version", kFormatVersion}, {"templates", list}};
}

std::vector<QuestionTemplate> LoadTemplates(const std::filesystem::path& path) {
  Json json;
  try {
    json = Json::parse(ReadFile(path));
  } catch (const Json::exception& e) {
    throw DataError(path.filename().string() + ": " + e.what());
  }
  return TemplatesFromJson(json);
}

Corpus InstantiateTemplates(const std::vector<QuestionTemplate>& templates,
                            const ValueLookup& lookup, std::size_t limit_per_template) {
  Corpus corpus;
  std::set<std::string> ids;
  for (const auto& t : templates) {
    CheckTemplate(t);
    const auto text_uses = FindSlots(t.text_pattern);
    const auto sql_uses = FindSlots(t.sql_pattern);

    std::vector<std::string> names;
    std::vector<const std::vector<std::string>*> domains;
    std::size_t combinations = 1;
    for (const auto& [name, b] : t.slots) {
      const ValueSet* set = lookup.Find(b.table, b.column);
      if (!set) {
        throw UnboundSlot("template '" + t.id + "': slot [" + name + "] names unknown column " +
                          b.table + "." + b.column);
      }
      if (set->values.empty()) {
        throw EmptyValueSet("template '" + t.id + "': column " + b.table + "." + b.column +
                            " has no values");
      }
      names.push_back(name);
      domains.push_back(&set->values);
      combinations = std::min(combinations * set->values.size(), limit_per_template);
    }
    const std::size_t count = std::min(combinations, limit_per_template);

    std::vector<std::size_t> digits(names.size(), 0);
    for (std::size_t n = 0; n < count; ++n) {
      std::map<std::string, std::string> raw;
      std::map<std::string, std::string> escaped;
      std::vector<std::string> parts;
      for (std::size_t k = 0; k < names.size(); ++k) {
        const std::string& v = (*domains[k])[digits[k]];
        raw[names[k]] = v;
        escaped[names[k]] = EscapeDoubleQuoted(v);
        parts.push_back(v);
      }
      Sample s;
      s.id = t.id + "-" + Hex64(Fnv1a64(Join(parts, "\x1f")));
      s.template_question = Substitute(t.text_pattern, text_uses, raw);
      const std::string sql = Substitute(t.sql_pattern, sql_uses, escaped);
      try {
        s.gold_sql = SerializeSql(ParseSql(sql));
      } catch (const SqlError& e) {
        throw DataError("template '" + t.id + "' produced unparseable SQL: " + e.what());
      }
      s.extra["template"] = t.id;
      if (!ids.insert(s.id).second) {
        throw DataError("template '" + t.id + "' produced duplicate id " + s.id);
      }
      corpus.push_back(std::move(s));
      // Odometer step, last slot fastest.
      for (std::size_t k = names.size(); k-- > 0;) {
        if (++digits[k] < domains[k]->size()) break;
        digits[k] = 0;
      }
    }
  }
  return corpus;
}

}  // namespace medsql
