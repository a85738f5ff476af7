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

// Question augmentation: round-trip translation through a pivot language,
// and question/SQL pairs instantiated from slotted templates.

#ifndef MEDSQL_AUGMENT_H_
#define MEDSQL_AUGMENT_H_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "medsql/corpus.h"
#include "medsql/json.h"
#include "medsql/value_lookup.h"

namespace medsql {

class Translator {
 public:
  virtual ~Translator() = default;
  // Must be safe to call from several threads at once.
  virtual std::string Translate(std::string_view text, std::string_view src,
                                std::string_view tgt) const = 0;
};

struct TranslatorEndpoint {
  std::string base_url;  // http://host[:port][/prefix]
  std::chrono::milliseconds timeout{10000};
  int retries = 2;
  std::chrono::milliseconds backoff{200};  // multiplied by the attempt number
};

// POST {base_url}/translate with {"text", "src", "tgt"}; a 200 response
// carries {"text"}. Any other status or a transport failure is retried.
class HttpTranslator : public Translator {
 public:
  // Throws DataError for a malformed endpoint.
  explicit HttpTranslator(TranslatorEndpoint endpoint);

  // Throws TranslateError once retries are exhausted (status 0 for
  // transport failures), or for a 200 response without a "text" string.
  std::string Translate(std::string_view text, std::string_view src,
                        std::string_view tgt) const override;

 private:
  TranslatorEndpoint endpoint_;
  std::string host_;  // scheme://host:port
  std::string path_;  // prefix + "/translate"
};

// Offline translator for tests and reproducible runs. Into a pivot it
// reverses the tokens and tags them with the pivot; back into English it
// undoes that and applies a fixed per-pivot word substitution table, so a
// round trip changes a question only if it uses one of those words.
class StubTranslator : public Translator {
 public:
  std::string Translate(std::string_view text, std::string_view src,
                        std::string_view tgt) const override;

  // The substitution table for `pivot` (empty for unknown pivots).
  static const std::map<std::string, std::string>& Rewrites(std::string_view pivot);
};

inline const std::vector<std::string>& DefaultPivots() {
  static const std::vector<std::string> pivots = {"fr", "de"};
  return pivots;
}

// en -> pivot -> en, whitespace-normalized. Throws InvalidPivot before any
// call when `pivot` is not in `allowed_pivots`.
std::string BackTranslate(std::string_view question, std::string_view pivot,
                          const Translator& translator,
                          const std::vector<std::string>& allowed_pivots = DefaultPivots());

struct AugmentOptions {
  std::vector<std::string> allowed_pivots = DefaultPivots();
  int jobs = 1;  // samples translated concurrently
};

struct AugmentFailure {
  std::string id;
  std::string pivot;
  std::string error;
};

struct AugmentResult {
  Corpus corpus;  // input order; only synthetic paraphrases differ
  std::size_t added = 0;
  std::size_t degenerate = 0;
  std::vector<AugmentFailure> failures;  // corpus order, then pivot order
};

// Round-trips every template question through each pivot. A result equal
// to the (whitespace-normalized) source is dropped. An existing synthetic
// paraphrase with the same pivot is replaced. Translation failures are
// recorded and the sample keeps going without that pivot.
AugmentResult AugmentCorpus(const Corpus& corpus, const std::vector<std::string>& pivots,
                            const Translator& translator, const AugmentOptions& options = {});

struct SlotBinding {
  std::string table;
  std::string column;
};

// Slots are written [NAME] in both patterns.
struct QuestionTemplate {
  std::string id;
  std::string text_pattern;
  std::string sql_pattern;
  std::map<std::string, SlotBinding> slots;
};

// {"format_version": 1, "templates": [{"id", "text", "sql",
//   "slots": {"NAME": {"table", "column"}}}]}
std::vector<QuestionTemplate> TemplatesFromJson(const Json& json);
Json TemplatesToJson(const std::vector<QuestionTemplate>& templates);
std::vector<QuestionTemplate> LoadTemplates(const std::filesystem::path& path);

// Up to `limit_per_template` samples per template. Slot values come from
// `lookup` in canonical order; with several slots, combinations are
// enumerated with the first slot (by name) varying slowest. SQL-side
// values are escaped for double-quoted literals. Ids are
// "<template id>-<hash of the values>". Throws UnboundSlot, EmptyValueSet,
// and DataError when an instantiated query does not parse.
Corpus InstantiateTemplates(const std::vector<QuestionTemplate>& templates,
                            const ValueLookup& lookup, std::size_t limit_per_template);

}  // namespace medsql

#endif  // MEDSQL_AUGMENT_H_
