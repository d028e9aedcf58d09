#include "perctrunc/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>

namespace perctrunc {

int thread_count() {
  if (const char* env = std::getenv("PERCTRUNC_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

// Static contiguous partition of [0, trials); worker t handles one range.
void run_partitioned(uint64_t trials, int threads,
                     const std::function<void(uint64_t, uint64_t, int)>& range_fn) {
  if (threads <= 1 || trials < 2) {
    range_fn(0, trials, 0);
    return;
  }
  const uint64_t t = static_cast<uint64_t>(threads);
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  pool.reserve(t);
  for (uint64_t w = 0; w < t; ++w) {
    const uint64_t lo = trials * w / t;
    const uint64_t hi = trials * (w + 1) / t;
    pool.emplace_back([&, lo, hi, w] {
      try {
        range_fn(lo, hi, static_cast<int>(w));
      } catch (...) {
        if (!failed.exchange(true)) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

uint64_t count_trials(uint64_t trials, const std::function<bool(uint64_t)>& fn, int threads) {
  if (threads <= 0) threads = thread_count();
  std::vector<uint64_t> partial(static_cast<size_t>(threads < 1 ? 1 : threads), 0);
  run_partitioned(trials, threads, [&](uint64_t lo, uint64_t hi, int w) {
    uint64_t c = 0;
    for (uint64_t i = lo; i < hi; ++i) {
      if (fn(i)) ++c;
    }
    partial[static_cast<size_t>(w)] = c;
  });
  uint64_t total = 0;
  for (uint64_t c : partial) total += c;
  return total;
}

std::vector<uint8_t> collect_trials(uint64_t trials, const std::function<bool(uint64_t)>& fn,
                                    int threads) {
  if (threads <= 0) threads = thread_count();
  std::vector<uint8_t> out(trials, 0);
  run_partitioned(trials, threads, [&](uint64_t lo, uint64_t hi, int) {
    for (uint64_t i = lo; i < hi; ++i) out[i] = fn(i) ? 1 : 0;
  });
  return out;
}

}  // namespace perctrunc
