#include "perctrunc/estimate.hpp"

#include <cmath>

#include "perctrunc/errors.hpp"

namespace perctrunc {

std::pair<double, double> wilson_ci(uint64_t successes, uint64_t trials) {
  if (trials == 0) throw ValidationError("trials must be >= 1");
  if (successes > trials) throw ValidationError("successes exceed trials");
  const double z = 1.959963984540054;  // 95%
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = phat + z2 / (2.0 * n);
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
  return {(center - half) / denom, (center + half) / denom};
}

EstimateResult make_estimate(uint64_t successes, uint64_t trials, uint64_t seed,
                             double wall_ms) {
  const auto [lo, hi] = wilson_ci(successes, trials);
  EstimateResult r;
  r.estimate = static_cast<double>(successes) / static_cast<double>(trials);
  r.trials = trials;
  r.successes = successes;
  r.ci_lo = lo;
  r.ci_hi = hi;
  r.seed = seed;
  r.wall_ms = wall_ms;
  return r;
}

bool ci_above(const EstimateResult& a, const EstimateResult& b) {
  return a.ci_lo > b.ci_hi;
}

}  // namespace perctrunc
