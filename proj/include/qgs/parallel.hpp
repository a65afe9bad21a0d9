#pragma once

// Deterministic chunked loops. Work is split into fixed-size chunks that do
// not depend on the worker count; each chunk writes its own partial result
// and the caller reduces partials in chunk order.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qgs {

struct ChunkRange {
  std::uint64_t index;
  std::uint64_t begin;
  std::uint64_t end;
};

inline std::uint64_t chunk_count(std::uint64_t total, std::uint64_t chunk) {
  return total == 0 ? 0 : (total + chunk - 1) / chunk;
}

/// Runs fn(ChunkRange) for every chunk of [0, total) using `workers` threads
/// and returns the per-chunk results in chunk order.
template <class Result, class Fn>
std::vector<Result> map_chunks(std::uint64_t total, std::uint64_t chunk, int workers, Fn fn) {
  const std::uint64_t chunks = chunk_count(total, chunk);
  std::vector<Result> out(chunks);
  auto run = [&](std::uint64_t c) {
    const std::uint64_t b = c * chunk;
    out[c] = fn(ChunkRange{c, b, std::min(total, b + chunk)});
  };
  const auto threads = static_cast<std::uint64_t>(std::max(1, workers));
  if (threads == 1 || chunks <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run(c);
    return out;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  const auto spawn = std::min(threads, chunks);
  pool.reserve(spawn);
  for (std::uint64_t t = 0; t < spawn; ++t) {
    pool.emplace_back([&] {
      for (std::uint64_t c; (c = next.fetch_add(1)) < chunks;) {
        try {
          run(c);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace qgs
