//
// Copyright 2026 The infolearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef INFOLEARN_PARALLEL_HPP_
#define INFOLEARN_PARALLEL_HPP_

// Fixed-size chunking over an index range. Chunk boundaries depend only on
// the range and the chunk size, never on the worker count, so callers that
// reduce per-chunk results in chunk order get identical output for any
// number of workers.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace infolearn {

inline std::size_t default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<std::size_t>(hw);
}

inline constexpr std::size_t kDefaultChunk = 4096;

inline std::size_t chunk_count(std::size_t count, std::size_t chunk = kDefaultChunk) {
  return (count + chunk - 1) / chunk;
}

// Calls body(chunk_index, begin, end) for every chunk of [0, count). The
// first exception thrown by any chunk is rethrown after all workers stop.
template <class Body>
void for_each_chunk(std::size_t count, std::size_t workers, Body&& body,
                    std::size_t chunk = kDefaultChunk) {
  const std::size_t chunks = chunk_count(count, chunk);
  if (chunks == 0) return;
  workers = std::clamp<std::size_t>(workers, 1, chunks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    while (true) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        body(c, c * chunk, std::min(count, (c + 1) * chunk));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(chunks);
        return;
      }
    }
  };
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace infolearn

#endif  // INFOLEARN_PARALLEL_HPP_
