#include "campanato/parallel.hpp"

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>

namespace campanato {
namespace {

std::size_t env_threads() {
  std::size_t n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("OSC_THREADS")) {
    std::size_t cap = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), cap);
    if (ec == std::errc() && cap > 0 && cap < n) n = cap;
  }
  return n;
}

std::atomic<std::size_t>& thread_cap() {
  static std::atomic<std::size_t> cap{env_threads()};
  return cap;
}

}  // namespace

std::size_t max_threads() { return thread_cap().load(std::memory_order_relaxed); }

void set_max_threads(std::size_t n) { thread_cap().store(n == 0 ? 1 : n, std::memory_order_relaxed); }

}  // namespace campanato
