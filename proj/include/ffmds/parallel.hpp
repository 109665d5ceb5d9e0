/*
   Copyright 2026 The ffmds Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

// Static-partition parallel loops. Each worker owns one contiguous chunk and
// its own accumulator; accumulators are merged in chunk order, so results do
// not depend on the thread count as long as the merge is exact.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace ffmds {

inline unsigned default_threads() {
  const unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1 : h;
}

/**
 * Runs body(begin, end, acc) over [0, count) split into `threads` chunks and
 * folds the per-chunk accumulators with merge(total, part) in chunk order.
 */
template <class Acc, class Make, class Body, class Merge>
Acc parallel_reduce(std::size_t count, unsigned threads, Make make, Body body, Merge merge) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::vector<Acc> parts;
  parts.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) parts.push_back(make());
  auto chunk = [&](unsigned t) {
    const std::size_t lo = count * t / threads;
    const std::size_t hi = count * (t + 1) / threads;
    body(lo, hi, parts[t]);
  };
  if (threads == 1) {
    chunk(0);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          chunk(t);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  Acc total = make();
  for (auto& p : parts) merge(total, p);
  return total;
}

/// parallel_reduce without a result.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
  struct Nothing {};
  parallel_reduce<Nothing>(
      count, threads, [] { return Nothing{}; }, [&](std::size_t lo, std::size_t hi, Nothing&) { body(lo, hi); },
      [](Nothing&, Nothing&) {});
}

}  // namespace ffmds
