#pragma once

// Fixed block decomposition over worker threads. Results come back indexed by
// block, so merging them in block order is deterministic for any worker count.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hypsym {

inline unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Calls fn(block) for block in [0, n_blocks) and returns the results in block order.
template <class R, class F>
std::vector<R> run_blocks(std::size_t n_blocks, unsigned workers, F&& fn) {
  std::vector<R> results(n_blocks);
  workers = std::min<unsigned>(resolve_workers(workers), static_cast<unsigned>(std::max<std::size_t>(n_blocks, 1)));
  if (workers <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) results[b] = fn(b);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t b = next.fetch_add(1);
        if (b >= n_blocks) return;
        try {
          results[b] = fn(b);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next.store(n_blocks);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return results;
}

// Splits [0, n) into contiguous blocks of at most block_size items.
struct BlockRange {
  std::size_t begin = 0;
  std::size_t end = 0;
};

inline std::vector<BlockRange> split_range(std::size_t n, std::size_t block_size) {
  std::vector<BlockRange> out;
  if (block_size == 0) block_size = 1;
  for (std::size_t b = 0; b < n; b += block_size) out.push_back({b, std::min(n, b + block_size)});
  return out;
}

}  // namespace hypsym
