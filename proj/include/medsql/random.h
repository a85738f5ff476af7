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

// Sampling helpers with results fixed across standard libraries. The
// std distributions are implementation-defined; std::mt19937_64 is not.

#ifndef MEDSQL_RANDOM_H_
#define MEDSQL_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace medsql {

using Rng = std::mt19937_64;

// Uniform in [0, n) by rejection. n must be positive.
inline std::uint64_t UniformBelow(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = Rng::max() - (Rng::max() % n + 1) % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > limit);
  return x % n;
}

// Uniform k-subset of [0, n) in draw order (partial Fisher-Yates).
inline std::vector<std::size_t> SampleIndices(Rng& rng, std::size_t n,
                                              std::size_t k) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (std::size_t i = 0; i < k && i < n; ++i) {
    const std::size_t j = i + UniformBelow(rng, n - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k < n ? k : n);
  return idx;
}

template <typename T>
const T& Pick(Rng& rng, const std::vector<T>& items) {
  return items[UniformBelow(rng, items.size())];
}

}  // namespace medsql

#endif  // MEDSQL_RANDOM_H_
