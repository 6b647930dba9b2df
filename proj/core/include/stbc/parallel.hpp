#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace stbc {

// A contiguous block of trial indices [begin, end) with its chunk number.
struct ChunkRange {
  long long index;
  long long begin;
  long long end;
};

// Trials per chunk for all Monte Carlo loops. Fixed so that the mapping from
// trial number to RNG stream never depends on the worker count.
inline constexpr long long kChunkTrials = 1LL << 16;

// Partitions [first_trial, first_trial + total) into kChunkTrials-sized
// chunks, numbered from first_chunk upward, and evaluates fn on each. Chunks
// are distributed over `workers` threads but results come back indexed by
// chunk, so the caller can reduce them in a fixed order and obtain results
// that are bit-identical for any worker count. fn must be invocable as
// T fn(const ChunkRange&) and must not share mutable state across chunks.
template <typename T, typename Fn>
std::vector<T> map_chunks(long long total, long long first_chunk,
                          long long first_trial, int workers, Fn&& fn) {
  const long long n_chunks = (total + kChunkTrials - 1) / kChunkTrials;
  std::vector<T> results(static_cast<std::size_t>(n_chunks));
  auto run = [&](long long c) {
    ChunkRange r;
    r.index = first_chunk + c;
    r.begin = first_trial + c * kChunkTrials;
    r.end = first_trial + std::min(total, (c + 1) * kChunkTrials);
    results[static_cast<std::size_t>(c)] = fn(r);
  };

  int n_workers = workers > 0 ? workers
                              : static_cast<int>(std::thread::hardware_concurrency());
  if (n_workers < 1) n_workers = 1;
  if (n_workers > n_chunks) n_workers = static_cast<int>(n_chunks);

  if (n_workers <= 1) {
    for (long long c = 0; c < n_chunks; ++c) run(c);
    return results;
  }

  std::atomic<long long> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_workers));
  for (int w = 0; w < n_workers; ++w) {
    pool.emplace_back([&] {
      for (long long c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1))
        run(c);
    });
  }
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace stbc
