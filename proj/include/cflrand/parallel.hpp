#ifndef CFLRAND_PARALLEL_HPP
#define CFLRAND_PARALLEL_HPP

#include "cflrand/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace cflrand {

inline unsigned default_workers() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

/// Default cap on the number of words a single enumeration may visit.
/// CFLRAND_BUDGET overrides it.
inline std::uint64_t default_budget() {
  if (const char* env = std::getenv("CFLRAND_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return std::uint64_t{1} << 28;
}

inline void require_budget(std::uint64_t needed, std::uint64_t budget, const char* what) {
  if (needed > budget)
    throw budget_error(std::string(what) + ": needs " + std::to_string(needed) +
                       " steps, budget is " + std::to_string(budget));
}

/// Split [0, total) into a fixed number of chunks (independent of `workers`)
/// and run `fn(chunk_index, begin, end)` on a pool. Chunk boundaries depend
/// only on `total`, so per-chunk results are identical for any worker count.
template <class Fn>
void for_each_chunk(std::uint64_t total, unsigned workers, Fn&& fn,
                    std::uint64_t chunks = 256) {
  if (total == 0) return;
  chunks = std::max<std::uint64_t>(1, std::min(chunks, total));
  const std::uint64_t step = (total + chunks - 1) / chunks;
  chunks = (total + step - 1) / step;
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(chunks)));

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto body = [&] {
    for (;;) {
      std::uint64_t c = next.fetch_add(1);
      if (c >= chunks) return;
      std::uint64_t b = c * step, e = std::min(total, b + step);
      try {
        fn(c, b, e);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = chunks;
      }
    }
  };
  if (workers == 1) {
    body();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(body);
  }
  if (failure) std::rethrow_exception(failure);
}

/// Sum of `fn(begin, end)` over all chunks; the reduction is a plain integer
/// sum, so the result does not depend on scheduling.
template <class Fn>
std::uint64_t parallel_sum(std::uint64_t total, unsigned workers, Fn&& fn) {
  std::vector<std::uint64_t> partial(std::min<std::uint64_t>(256, std::max<std::uint64_t>(total, 1)), 0);
  for_each_chunk(total, workers, [&](std::uint64_t c, std::uint64_t b, std::uint64_t e) {
    partial[c] = fn(b, e);
  });
  std::uint64_t sum = 0;
  for (auto v : partial) sum += v;
  return sum;
}

}  // namespace cflrand

#endif  // CFLRAND_PARALLEL_HPP
