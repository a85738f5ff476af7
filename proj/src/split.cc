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

#include "medsql/split.h"

#include <algorithm>
#include <unordered_set>

#include "medsql/errors.h"
#include "medsql/parallel.h"
#include "medsql/random.h"
#include "medsql/sql.h"
#include "medsql/strings.h"

namespace medsql {
namespace {

struct Placement {
  bool designated_main = false;
  bool designated_join = false;
};

bool IsDesignated(const std::vector<std::string>& designated,
                  std::string_view table) {
  return std::any_of(designated.begin(), designated.end(),
                     [&](const std::string& d) { return EqualsIgnoreCase(d, table); });
}

Placement Place(const SqlQuery& q, const SplitSpec& spec) {
  Placement p;
  p.designated_main = IsDesignated(spec.designated_tables, q.main_table);
  for (const JoinClause& j : q.joins) {
    if (IsDesignated(spec.designated_tables, j.table)) p.designated_join = true;
  }
  return p;
}

}  // namespace

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain:
      return "TRAIN";
    case Split::kDev:
      return "DEV";
    case Split::kTest:
      return "TEST";
  }
  return "";
}

Split ParseSplitName(std::string_view name) {
  for (Split s : {Split::kTrain, Split::kDev, Split::kTest}) {
    if (EqualsIgnoreCase(name, SplitName(s))) return s;
  }
  throw DataError("unknown split '" + std::string(name) + "'");
}

void ValidateSplitSpec(const SplitSpec& spec, const SchemaDef& schema) {
  if (spec.designated_tables.empty()) {
    throw DataError("split spec needs at least one designated table");
  }
  for (const auto& t : spec.designated_tables) {
    if (!schema.FindTable(t)) {
      throw SchemaError("designated table " + t + " is not in the schema");
    }
  }
}

SplitResult AssignSplits(const Corpus& corpus, const SplitSpec& spec, int jobs) {
  if (spec.designated_tables.empty()) {
    throw DataError("split spec needs at least one designated table");
  }
  std::vector<Placement> placements(corpus.size());
  ParallelFor(
      corpus.size(), jobs, [] { return 0; },
      [&](int, std::size_t i) {
        placements[i] = Place(ParseSql(corpus[i].gold_sql), spec);
      });

  SplitResult result;
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (placements[i].designated_main) {
      pool.push_back(i);
      if (placements[i].designated_join) result.conflicts.push_back(corpus[i].id);
    } else {
      result.assignment[corpus[i].id] = Split::kTrain;
    }
  }
  if (pool.size() < spec.test_size) {
    throw EvalPoolTooSmall(pool.size(), spec.test_size);
  }
  for (std::size_t i : pool) result.assignment[corpus[i].id] = Split::kDev;
  Rng rng(spec.seed);
  for (std::size_t k : SampleIndices(rng, pool.size(), spec.test_size)) {
    result.assignment[corpus[pool[k]].id] = Split::kTest;
  }
  result.eval_pool = pool.size();
  result.train_pool = corpus.size() - pool.size();
  result.sizes = {result.train_pool, pool.size() - spec.test_size, spec.test_size};
  return result;
}

std::vector<SplitViolation> VerifySplit(const Corpus& corpus,
                                        const SplitAssignment& assignment,
                                        const SplitSpec& spec) {
  std::vector<SplitViolation> out;
  for (const Sample& s : corpus) {
    auto it = assignment.find(s.id);
    if (it == assignment.end()) {
      out.push_back({s.id, {"unassigned"}});
      continue;
    }
    Placement p;
    try {
      p = Place(ParseSql(s.gold_sql), spec);
    } catch (const SqlError&) {
      out.push_back({s.id, {"unparseable"}});
      continue;
    }
    std::vector<std::string> rules;
    if (it->second == Split::kTrain) {
      if (p.designated_main) rules.push_back("train-has-designated-main");
    } else {
      if (p.designated_join) rules.push_back("eval-has-designated-join");
      if (!p.designated_main) rules.push_back("eval-lacks-designated-main");
    }
    if (!rules.empty()) out.push_back({s.id, std::move(rules)});
  }
  return out;
}

std::string FormatSplitFile(const Corpus& corpus,
                            const SplitAssignment& assignment,
                            std::uint64_t seed) {
  std::string out = "# medsql split format_version=" +
                    std::to_string(kFormatVersion) + " seed=" +
                    std::to_string(seed) + "\n";
  for (const Sample& s : corpus) {
    auto it = assignment.find(s.id);
    if (it == assignment.end()) continue;
    out += s.id;
    out += '\t';
    out += SplitName(it->second);
    out += '\n';
  }
  return out;
}

SplitAssignment ParseSplitFile(std::string_view text) {
  SplitAssignment out;
  std::size_t line_no = 0;
  for (const std::string& raw : SplitOn(text, '\n')) {
    ++line_no;
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = SplitOn(line, '\t');
    if (fields.size() != 2 || fields[0].empty()) {
      throw RecordError(line_no, "expected 'id<TAB>split'");
    }
    Split split;
    try {
      split = ParseSplitName(fields[1]);
    } catch (const DataError& e) {
      throw RecordError(line_no, e.what());
    }
    if (!out.emplace(fields[0], split).second) {
      throw RecordError(line_no, "duplicate id '" + fields[0] + "'");
    }
  }
  return out;
}

Json SplitReportJson(const SplitResult& result, const SplitSpec& spec,
                     std::size_t corpus_size,
                     const std::optional<SplitSizes>& reference) {
  Json report = {
      {"format_version", kFormatVersion},
      {"seed", spec.seed},
      {"designated_tables", spec.designated_tables},
      {"corpus_size", corpus_size},
      {"eval_pool", result.eval_pool},
      {"train_pool", result.train_pool},
      {"sizes",
       {{"TRAIN", result.sizes.train},
        {"DEV", result.sizes.dev},
        {"TEST", result.sizes.test}}},
      {"conflicts", result.conflicts},
  };
  if (reference) {
    auto diff = [](std::size_t ours, std::size_t theirs) {
      return static_cast<long long>(ours) - static_cast<long long>(theirs);
    };
    const std::size_t ref_total = reference->train + reference->dev + reference->test;
    report["reference"] = {
        {"sizes",
         {{"TRAIN", reference->train},
          {"DEV", reference->dev},
          {"TEST", reference->test}}},
        {"diff",
         {{"TRAIN", diff(result.sizes.train, reference->train)},
          {"DEV", diff(result.sizes.dev, reference->dev)},
          {"TEST", diff(result.sizes.test, reference->test)}}},
        {"match", result.sizes.train == reference->train &&
                      result.sizes.dev == reference->dev &&
                      result.sizes.test == reference->test},
        {"reference_total", ref_total},
        {"reference_eval_pool", reference->dev + reference->test},
        {"total_diff", diff(corpus_size, ref_total)},
    };
  }
  return report;
}

Corpus SelectSplit(const Corpus& corpus, const SplitAssignment& assignment,
                   Split split) {
  Corpus out;
  for (const Sample& s : corpus) {
    auto it = assignment.find(s.id);
    if (it == assignment.end()) {
      throw DataError("sample '" + s.id + "' has no split assignment");
    }
    if (it->second == split) out.push_back(s);
  }
  return out;
}

}  // namespace medsql
