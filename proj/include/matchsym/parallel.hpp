// Copyright 2026 The matchsym Authors
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

#pragma once

// Data-parallel scans over index ranges. Work is split into contiguous
// chunks, one per worker, and results are combined in chunk order so the
// outcome never depends on the number of workers.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace matchsym {

// MATCHSYM_JOBS if set to a positive integer, else 1.
inline int default_jobs() {
  if (const char* env = std::getenv("MATCHSYM_JOBS")) {
    try {
      const int j = std::stoi(env);
      if (j > 0) return j;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

// Calls body(chunk, begin, end) for `jobs` contiguous chunks of [0, count).
template <class Body>
void parallel_chunks(std::uint64_t count, int jobs, Body&& body) {
  jobs = std::max(1, jobs);
  if (count < static_cast<std::uint64_t>(jobs)) jobs = static_cast<int>(std::max<std::uint64_t>(count, 1));
  const std::uint64_t step = (count + jobs - 1) / jobs;
  if (jobs == 1) {
    body(0, std::uint64_t{0}, count);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(jobs);
  for (int c = 0; c < jobs; ++c) {
    const std::uint64_t b = std::min(count, step * c);
    const std::uint64_t e = std::min(count, b + step);
    threads.emplace_back([&, c, b, e] {
      try {
        body(c, b, e);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

// Least i in [0, count) with pred(i), if any.
template <class Pred>
std::optional<std::uint64_t> parallel_find_first(std::uint64_t count, int jobs,
                                                 Pred&& pred) {
  std::atomic<std::uint64_t> best{count};
  parallel_chunks(count, jobs, [&](int, std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t i = b; i < e; ++i) {
      if (i >= best.load(std::memory_order_relaxed)) return;
      if (pred(i)) {
        std::uint64_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
        return;
      }
    }
  });
  const std::uint64_t r = best.load();
  if (r == count) return std::nullopt;
  return r;
}

// Sum of f(i) over [0, count).
template <class F>
std::uint64_t parallel_count(std::uint64_t count, int jobs, F&& f) {
  std::vector<std::uint64_t> partial(std::max(1, jobs), 0);
  parallel_chunks(count, jobs, [&](int c, std::uint64_t b, std::uint64_t e) {
    std::uint64_t s = 0;
    for (std::uint64_t i = b; i < e; ++i) s += static_cast<std::uint64_t>(f(i));
    partial[c] = s;
  });
  std::uint64_t total = 0;
  for (auto s : partial) total += s;
  return total;
}

}  // namespace matchsym
