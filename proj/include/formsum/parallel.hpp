#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace formsum {

inline unsigned resolve_jobs(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Splits [lo, hi) into fixed chunks, evaluates chunk_fn on each from a small
// worker pool, and combines the per-chunk results in chunk order.  The
// partition depends only on (lo, hi), never on the worker count or
// scheduling, so results are identical at any parallelism degree.
template <typename Result, typename ChunkFn, typename CombineFn>
Result chunked_reduce(std::uint64_t lo, std::uint64_t hi, unsigned jobs, Result init,
                      ChunkFn chunk_fn, CombineFn combine) {
  if (lo >= hi) return init;
  const std::uint64_t span = hi - lo;
  const std::uint64_t chunk = std::max<std::uint64_t>(1, span / 64);
  const std::size_t n_chunks = static_cast<std::size_t>((span + chunk - 1) / chunk);
  std::vector<Result> partial(n_chunks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_chunks) return;
      const std::uint64_t a = lo + i * chunk;
      const std::uint64_t b = std::min(hi, a + chunk);
      partial[i] = chunk_fn(a, b);
    }
  };
  const unsigned n_workers = std::min<std::uint64_t>(resolve_jobs(jobs), n_chunks);
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  Result acc = std::move(init);
  for (auto& p : partial) acc = combine(std::move(acc), std::move(p));
  return acc;
}

}  // namespace formsum
