#pragma once

#include <cstdint>
#include <utility>

namespace perctrunc {

// Monte Carlo point estimate for a Bernoulli event with a 95% Wilson score
// interval and the seed that reproduces it.
struct EstimateResult {
  double estimate = 0.0;
  uint64_t trials = 0;
  uint64_t successes = 0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  uint64_t seed = 0;
  double wall_ms = 0.0;
};

std::pair<double, double> wilson_ci(uint64_t successes, uint64_t trials);

EstimateResult make_estimate(uint64_t successes, uint64_t trials, uint64_t seed,
                             double wall_ms = 0.0);

// a lies strictly above b with both 95% intervals disjoint.
bool ci_above(const EstimateResult& a, const EstimateResult& b);

}  // namespace perctrunc
