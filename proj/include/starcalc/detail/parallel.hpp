// Thread-pool-free parallel loop helper honoring the STARCALC_THREADS variable.
#pragma once

#include <algorithm>
#include <cstdlib>
#include <cstddef>
#include <string>
#include <thread>
#include <vector>

namespace starcalc::detail {

/// Number of worker threads for node loops.  STARCALC_THREADS=<k> overrides;
/// unset or invalid falls back to the hardware concurrency (at least 1).
inline unsigned thread_count() {
  if (const char* env = std::getenv("STARCALC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024) {
      return static_cast<unsigned>(v);
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

/// Runs body(i) for i in [0, count) split across threads in contiguous blocks.
/// Body must be safe to call concurrently on distinct indices.  Exceptions from
/// workers are captured and the first one rethrown on the caller thread.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
  const unsigned threads = std::min<std::size_t>(thread_count(), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(threads);
  const std::size_t block = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = static_cast<std::size_t>(t) * block;
    const std::size_t end = std::min(count, begin + block);
    if (begin >= end) break;
    workers.emplace_back([&, begin, end, t] {
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace starcalc::detail
