#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace campanato {

// Upper bound on worker threads: hardware concurrency, capped by the
// OSC_THREADS environment variable when set, or by set_max_threads().
std::size_t max_threads();
void set_max_threads(std::size_t n);

// Runs body(i) for i in [0, n) over static contiguous chunks. Each index is
// handled by exactly one thread, so callers writing to slot i of a
// preallocated buffer get results independent of the thread count.
template <class Body>
void parallel_for(std::size_t n, Body&& body, std::size_t min_chunk = 64) {
  std::size_t threads = max_threads();
  if (min_chunk == 0) min_chunk = 1;
  if (threads > n / min_chunk) threads = n / min_chunk;
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const std::size_t chunk = (n + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      const std::size_t lo = t * chunk;
      const std::size_t hi = lo + chunk < n ? lo + chunk : n;
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace campanato
