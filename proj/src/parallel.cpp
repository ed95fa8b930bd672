// SPDX-License-Identifier: Apache-2.0
#include "psdblk/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace psdblk {

void parallel_for(long total, int jobs, const std::function<void(long)>& fn) {
  if (total <= 0) return;
  long workers = std::min<long>(std::max(jobs, 1), total);
  if (workers == 1) {
    for (long i = 0; i < total; ++i) fn(i);
    return;
  }
  std::atomic<long> counter{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      long i = counter.fetch_add(1, std::memory_order_relaxed);
      if (i >= total) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        counter.store(total, std::memory_order_relaxed);  // drain remaining work
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (long w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace psdblk
