// Copyright 2026 The debatecheck Authors
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

#ifndef DEBATECHECK_WORKER_POOL_H_
#define DEBATECHECK_WORKER_POOL_H_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace debatecheck {

// Runs fn(i) for i in [0, n) on up to `workers` threads. Indices are handed
// out in order; once `stop` becomes true no new index is started. The first
// exception escaping fn is rethrown after all threads join.
template <typename Fn>
void ParallelFor(std::size_t n, int workers, Fn&& fn,
                 const std::atomic<bool>* stop = nullptr) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto body = [&] {
    for (;;) {
      if (stop && stop->load()) return;
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  int threads = std::max(1, std::min<int>(workers, static_cast<int>(n)));
  if (threads == 1) {
    body();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(body);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace debatecheck

#endif  // DEBATECHECK_WORKER_POOL_H_
