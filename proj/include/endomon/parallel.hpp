// endomon - exact endomorphism monoids of small p-groups
//
// Deterministic data parallelism: work is cut into a fixed number of
// chunks independent of the thread count, each chunk owns its result
// slot and (when sampling) its own RNG stream, so output never depends
// on how many workers ran.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace endomon {

  // ENDOMON_THREADS overrides the hardware default.
  inline unsigned default_thread_count() {
    if (char const* env = std::getenv("ENDOMON_THREADS")) {
      try {
        int n = std::stoi(env);
        if (n > 0) {
          return static_cast<unsigned>(n);
        }
      } catch (std::exception const&) {
      }
    }
    return std::max(1u, std::thread::hardware_concurrency());
  }

  // Calls fn(chunk) for chunk in [0, n_chunks) on up to `threads` workers.
  // The first exception thrown by any chunk is rethrown.
  template <typename Fn>
  void parallel_for_chunks(std::size_t n_chunks, unsigned threads, Fn&& fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_chunks)));
    if (threads <= 1) {
      for (std::size_t c = 0; c < n_chunks; ++c) {
        fn(c);
      }
      return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr       error;
    std::mutex               error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < n_chunks; c = next++) {
          try {
            fn(c);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) {
              error = std::current_exception();
            }
            next = n_chunks;
          }
        }
      });
    }
    for (auto& th : pool) {
      th.join();
    }
    if (error) {
      std::rethrow_exception(error);
    }
  }

  // Independent, reproducible stream for chunk `chunk` of a run seeded
  // with `seed`.
  inline std::mt19937_64 chunk_rng(std::uint64_t seed, std::uint64_t chunk) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
    return std::mt19937_64(seq);
  }

  // Splits `total` samples into fixed-size chunks and sums the per-chunk
  // counts returned by fn(rng, n_in_chunk).
  template <typename Fn>
  std::uint64_t sampled_count(std::uint64_t total, std::uint64_t seed, unsigned threads, Fn&& fn) {
    constexpr std::uint64_t     chunk_size = 4096;
    std::size_t const           n_chunks   = static_cast<std::size_t>((total + chunk_size - 1) / chunk_size);
    std::vector<std::uint64_t>  counts(n_chunks, 0);
    parallel_for_chunks(n_chunks, threads, [&](std::size_t c) {
      auto          rng = chunk_rng(seed, c);
      std::uint64_t n   = std::min(chunk_size, total - c * chunk_size);
      counts[c]         = fn(rng, n);
    });
    std::uint64_t sum = 0;
    for (auto x : counts) {
      sum += x;
    }
    return sum;
  }

}  // namespace endomon
