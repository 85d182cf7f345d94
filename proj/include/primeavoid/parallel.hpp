// Copyright 2026 The primeavoid Authors
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

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace primeavoid {

/// Fixed-size group of workers handed down from the CLI.
///
/// `for_each_index(n, fn)` calls `fn(i)` once for every i in [0, n).
/// Work is split into contiguous blocks; callers write results into
/// per-index slots so the outcome never depends on scheduling.
class WorkerPool {
  public:
    explicit WorkerPool(unsigned threads = 1) : threads_(std::max(1u, threads)) {}

    unsigned threads() const { return threads_; }

    template <typename Fn>
    void for_each_index(std::size_t n, Fn&& fn) const {
        if (n == 0) return;
        std::size_t workers = std::min<std::size_t>(threads_, n);
        if (workers == 1) {
            for (std::size_t i = 0; i < n; i++) fn(i);
            return;
        }

        std::exception_ptr first_error;
        std::mutex error_lock;
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; w++) {
            std::size_t begin = n * w / workers;
            std::size_t end = n * (w + 1) / workers;
            pool.emplace_back([&, begin, end] {
                try {
                    for (std::size_t i = begin; i < end; i++) fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> guard(error_lock);
                    if (!first_error) first_error = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }

  private:
    unsigned threads_;
};

}  // namespace primeavoid
