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

// Generalization splits by table position. Samples whose FROM table is a
// designated table form the evaluation pool; TEST is a seeded draw from
// that pool, DEV is the rest of it, and everything else is TRAIN.

#ifndef MEDSQL_SPLIT_H_
#define MEDSQL_SPLIT_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "medsql/corpus.h"
#include "medsql/json.h"
#include "medsql/schema.h"

namespace medsql {

enum class Split { kTrain, kDev, kTest };

std::string_view SplitName(Split split);  // "TRAIN", "DEV", "TEST"
Split ParseSplitName(std::string_view name);  // case-insensitive; DataError

struct SplitSpec {
  std::vector<std::string> designated_tables = {"PROCEDURES", "PRESCRIPTIONS",
                                                "LAB"};
  std::size_t test_size = 1000;
  std::uint64_t seed = 0;
};

// Throws SchemaError unless every designated table exists in `schema`, and
// DataError for an empty designated set.
void ValidateSplitSpec(const SplitSpec& spec, const SchemaDef& schema);

using SplitAssignment = std::map<std::string, Split>;

struct SplitSizes {
  std::size_t train = 0;
  std::size_t dev = 0;
  std::size_t test = 0;
};

struct SplitResult {
  SplitAssignment assignment;
  std::size_t eval_pool = 0;
  std::size_t train_pool = 0;
  SplitSizes sizes;
  // Eval-pool samples that also join a designated table. No assignment can
  // satisfy the leakage rules for them; VerifySplit reports them.
  std::vector<std::string> conflicts;
};

// Deterministic for a fixed corpus order and seed, whatever `jobs` is.
// Throws EvalPoolTooSmall, and ParseError for unparseable gold SQL.
SplitResult AssignSplits(const Corpus& corpus, const SplitSpec& spec,
                         int jobs = 1);

struct SplitViolation {
  std::string id;
  std::vector<std::string> rules;
  friend bool operator==(const SplitViolation&, const SplitViolation&) = default;
};

// One entry per offending sample, in corpus order, naming every rule it
// breaks: "unassigned", "unparseable", "train-has-designated-main",
// "eval-has-designated-join", "eval-lacks-designated-main".
std::vector<SplitViolation> VerifySplit(const Corpus& corpus,
                                        const SplitAssignment& assignment,
                                        const SplitSpec& spec);

// Tab-separated "id<TAB>SPLIT" lines in corpus order after a "#" header
// recording the format version and seed.
std::string FormatSplitFile(const Corpus& corpus,
                            const SplitAssignment& assignment,
                            std::uint64_t seed);
// Throws RecordError on malformed lines or duplicate ids.
SplitAssignment ParseSplitFile(std::string_view text);

// Sizes, pool arithmetic and, when `reference` is given, the per-split
// difference from it.
Json SplitReportJson(const SplitResult& result, const SplitSpec& spec,
                     std::size_t corpus_size,
                     const std::optional<SplitSizes>& reference);

// Samples of `corpus` assigned to `split`, in corpus order.
Corpus SelectSplit(const Corpus& corpus, const SplitAssignment& assignment,
                   Split split);

}  // namespace medsql

#endif  // MEDSQL_SPLIT_H_
