#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace banach::par {

int worker_count();
void set_worker_count(int n);  // clamped to >= 1

// Fixed chunk size: partial results and their fold order must not depend on
// how many workers run, or reports stop being reproducible.
inline constexpr std::uint64_t kChunk = 4096;

// Splits [0,total) into kChunk-sized chunks, evaluates fn(begin,end) -> T per
// chunk (possibly concurrently), and folds the per-chunk values in chunk
// order with operator+=.
template <class T, class Fn>
T chunked_reduce(std::uint64_t total, Fn&& fn) {
  const std::uint64_t nchunks = (total + kChunk - 1) / kChunk;
  T out{};
  if (nchunks == 0) return out;

  const int workers = worker_count();
  if (workers <= 1 || nchunks == 1) {
    for (std::uint64_t c = 0; c < nchunks; ++c) {
      const std::uint64_t b = c * kChunk;
      const std::uint64_t e = std::min(total, b + kChunk);
      T part = fn(b, e);
      out += part;
    }
    return out;
  }

  std::vector<T> parts(nchunks);
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;

  auto work = [&] {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= nchunks || failed.load(std::memory_order_relaxed)) return;
      const std::uint64_t b = c * kChunk;
      const std::uint64_t e = std::min(total, b + kChunk);
      try {
        parts[c] = fn(b, e);
      } catch (...) {
        {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };

  const int nthreads = static_cast<int>(std::min<std::uint64_t>(workers, nchunks));
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);

  for (std::uint64_t c = 0; c < nchunks; ++c) out += parts[c];
  return out;
}

}  // namespace banach::par
