#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace deltalab {

/// DELTA_LAB_THREADS, else the hardware concurrency.
inline unsigned worker_count() {
  if (const char *v = std::getenv("DELTA_LAB_THREADS")) {
    long n = std::strtol(v, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// results[i] = fn(i) for i < n. Chunks are pulled by the workers in any
/// order; the result vector is indexed, so merging it in order is
/// independent of scheduling.
template <class R, class Fn> std::vector<R> parallel_chunks(size_t n, Fn fn) {
  std::vector<R> out(n);
  unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(std::max<size_t>(n, 1)));
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          out[i] = fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto &t : pool) t.join();
  if (err) std::rethrow_exception(err);
  return out;
}

} // namespace deltalab
