// Deterministic work partitioning. Work is split into a fixed number of
// chunks independent of the thread count, and chunk results are consumed in
// chunk-index order, so results are identical for any QGAME_THREADS setting.
#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace qgame {

namespace detail {
inline std::atomic<unsigned>& thread_cap_storage() {
  static std::atomic<unsigned> cap{0};  // 0 = derive from env/hardware
  return cap;
}
}  // namespace detail

// Programmatic override, mainly for tests; 0 restores the default.
inline void set_thread_cap(unsigned n) { detail::thread_cap_storage() = n; }

inline unsigned max_threads() {
  const unsigned cap = detail::thread_cap_storage().load();
  if (cap > 0) return cap;
  if (const char* s = std::getenv("QGAME_THREADS")) {
    const long v = std::strtol(s, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v > 256 ? 256 : v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Runs chunk_fn(chunk_index, begin, end) over [0, n) split into n_chunks
// fixed ranges, then consume(chunk_index) sequentially in index order.
// chunk_fn must only touch per-chunk state; consume runs on this thread.
inline void chunked_run(std::size_t n, std::size_t n_chunks,
                        const std::function<void(std::size_t, std::size_t,
                                                 std::size_t)>& chunk_fn,
                        const std::function<void(std::size_t)>& consume) {
  if (n == 0) return;
  if (n_chunks == 0) n_chunks = 1;
  if (n_chunks > n) n_chunks = n;
  const std::size_t per = (n + n_chunks - 1) / n_chunks;

  const unsigned workers = max_threads();
  if (workers <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) {
      const std::size_t lo = c * per;
      const std::size_t hi = std::min(n, lo + per);
      if (lo < hi) chunk_fn(c, lo, hi);
      consume(c);
    }
    return;
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      const std::size_t lo = c * per;
      const std::size_t hi = std::min(n, lo + per);
      if (lo < hi) chunk_fn(c, lo, hi);
    }
  };
  std::vector<std::thread> pool;
  const unsigned count = static_cast<unsigned>(
      std::min<std::size_t>(workers, n_chunks));
  pool.reserve(count);
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (std::size_t c = 0; c < n_chunks; ++c) consume(c);
}

}  // namespace qgame
