#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace perctrunc {

// PERCTRUNC_THREADS, or the logical core count when unset. Results never
// depend on this value: trials are pure functions of their index and the
// aggregations below are commutative.
int thread_count();

// Number of trial indices in [0, trials) for which fn returns true.
uint64_t count_trials(uint64_t trials, const std::function<bool(uint64_t)>& fn,
                      int threads = 0);

// Per-trial outcomes indexed by trial.
std::vector<uint8_t> collect_trials(uint64_t trials, const std::function<bool(uint64_t)>& fn,
                                    int threads = 0);

}  // namespace perctrunc
