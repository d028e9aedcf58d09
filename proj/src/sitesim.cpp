#include "perctrunc/sitesim.hpp"

#include <bit>
#include <chrono>

#include "perctrunc/errors.hpp"
#include "perctrunc/parallel.hpp"
#include "perctrunc/rng.hpp"

namespace perctrunc {

namespace {
// Domain word distinct from every edge encoding (edge metas carry a model
// byte in 1..4).
constexpr uint64_t kSiteMeta =
    static_cast<uint64_t>(kEdgeEncodingVersion) | (0x7FULL << 8);
}  // namespace

double site_uniform(const ConfigSeed& cfg, const RenormVertex& w) {
  const uint64_t words[3] = {kSiteMeta, std::bit_cast<uint64_t>(w.v),
                             std::bit_cast<uint64_t>(w.u)};
  return to_unit(chain_words(chain_key(cfg.master, cfg.trial), words));
}

bool site_exploration_alive(const ConfigSeed& cfg, double gamma, uint64_t max_steps) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ValidationError("gamma must lie in [0,1]");
  if (max_steps == 0) throw ValidationError("max_steps must be >= 1");
  const uint64_t key = chain_key(cfg.master, cfg.trial);
  auto accept = [&](const RenormVertex& w) {
    const uint64_t words[3] = {kSiteMeta, std::bit_cast<uint64_t>(w.v),
                               std::bit_cast<uint64_t>(w.u)};
    return to_unit(chain_words(key, words)) < gamma;
  };
  return explore_wedge(accept, max_steps).frontier_alive;
}

EstimateResult estimate_site_survival(double gamma, uint64_t max_steps, uint64_t trials,
                                      uint64_t master_seed) {
  if (trials == 0) throw ValidationError("trials must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  const uint64_t successes = count_trials(trials, [&](uint64_t t) {
    return site_exploration_alive(ConfigSeed{master_seed, t}, gamma, max_steps);
  });
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return make_estimate(successes, trials, master_seed, ms);
}

ThresholdScan scan_site_threshold(double gamma_lo, double gamma_hi, int points,
                                  uint64_t max_steps, uint64_t trials, uint64_t master_seed,
                                  double min_survival) {
  if (points < 2) throw ValidationError("threshold scan needs at least 2 points");
  if (!(gamma_lo < gamma_hi)) throw ValidationError("need gamma_lo < gamma_hi");
  ThresholdScan scan;
  scan.min_survival = min_survival;
  scan.crossing_estimate = gamma_hi;
  bool found = false;
  for (int i = 0; i < points; ++i) {
    const double gamma =
        gamma_lo + (gamma_hi - gamma_lo) * static_cast<double>(i) / (points - 1);
    auto est = estimate_site_survival(gamma, max_steps, trials, master_seed);
    if (!found && est.estimate >= min_survival && i > 0) {
      scan.crossing_estimate = 0.5 * (gamma + scan.rows.back().gamma);
      found = true;
    }
    scan.rows.push_back(ThresholdScanRow{gamma, est});
  }
  return scan;
}

}  // namespace perctrunc
