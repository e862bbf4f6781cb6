#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace deduct::internal {

/// Runs fn(0..n-1) across `workers` threads (strided). fn must not throw.
inline void run_indexed(size_t n, int workers,
                        const std::function<void(size_t)>& fn) {
  if (workers <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  size_t count = std::min(static_cast<size_t>(workers), n);
  std::vector<std::thread> threads;
  threads.reserve(count);
  for (size_t t = 0; t < count; ++t)
    threads.emplace_back([&fn, t, count, n] {
      for (size_t i = t; i < n; i += count) fn(i);
    });
  for (std::thread& th : threads) th.join();
}

}  // namespace deduct::internal
