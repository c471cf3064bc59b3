#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace shiftlift {

/// Runs body(chunk) for chunk in [0, chunks) on up to `threads` workers.
/// Chunks are claimed in increasing order; body returning false stops
/// further claims. The first exception thrown is rethrown on the caller.
template <class Body>
void for_each_chunk(std::uint64_t chunks, unsigned threads, Body&& body) {
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    while (!stop.load(std::memory_order_relaxed)) {
      const std::uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= chunks) return;
      try {
        if (!body(c)) stop = true;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        stop = true;
      }
    }
  };

  const unsigned n = std::max(1u, static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks)));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace shiftlift
