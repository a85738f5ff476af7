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

#ifndef MEDSQL_PARALLEL_H_
#define MEDSQL_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace medsql {

// Runs body(state, i) for every i in [0, n) on up to `jobs` threads. Each
// worker owns one state built by make_state() (typically a private database
// connection). Callers write results into slot i, which keeps the output
// independent of scheduling. If bodies throw, the exception from the lowest
// index is rethrown, so the reported failure does not depend on timing.
template <typename MakeState, typename Body>
void ParallelFor(std::size_t n, int jobs, MakeState make_state, Body body) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(jobs < 1 ? 1 : jobs, n));
  if (workers <= 1) {
    if (n == 0) return;
    auto state = make_state();
    for (std::size_t i = 0; i < n; ++i) body(state, i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::size_t error_index = n;
  std::mutex error_mu;
  auto run = [&] {
    std::size_t i = n;
    try {
      auto state = make_state();
      // Indices are claimed in increasing order, so every index below a
      // failing one has been claimed and runs to completion.
      while (!failed.load()) {
        i = next.fetch_add(1);
        if (i >= n) break;
        body(state, i);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!error || i < error_index) {
        error = std::current_exception();
        error_index = i;
      }
      failed = true;
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(run);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace medsql

#endif  // MEDSQL_PARALLEL_H_
