#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace riplayer {

// Worker cap: RIPLAYER_THREADS if set (clamped to [1,256]), else hardware
// concurrency.
inline unsigned thread_cap() {
  if (const char* env = std::getenv("RIPLAYER_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<unsigned>(std::min<long>(v, 256));
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Number of contiguous chunks parallel_for_chunks will split [0,n) into.
inline std::size_t chunk_count(std::size_t n) {
  return n == 0 ? 0 : std::min<std::size_t>(thread_cap(), n);
}

// Runs body(chunk_index, begin, end) over contiguous chunks of [0,n), one
// worker per chunk. Workers must write only to disjoint state (e.g. a slot
// per chunk index); merging partials in chunk order is the caller's job,
// which keeps results schedule-independent. The first exception thrown by
// any worker is rethrown after the join.
inline void parallel_for_chunks(
    std::size_t n, const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  const std::size_t chunks = chunk_count(n);
  if (chunks == 0) return;
  const std::size_t step = (n + chunks - 1) / chunks;
  if (chunks == 1) {
    body(0, 0, n);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t b = c * step;
    const std::size_t e = std::min(n, b + step);
    if (b >= e) break;
    pool.emplace_back([&, c, b, e] {
      try {
        body(c, b, e);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace riplayer
