#pragma once

#include <cstdint>
#include <vector>

#include "perctrunc/estimate.hpp"
#include "perctrunc/sampler.hpp"
#include "perctrunc/wedge.hpp"

namespace perctrunc {

// Oriented site percolation on the wedge, explored with the same order and
// boundary rule as the renormalized process but with an independent
// Bernoulli(gamma) verdict per site. This is the reference dynamics the
// block-event exploration dominates.

// Per-site uniform; deterministic in (cfg, v, u) and disjoint from the edge
// keying domain.
double site_uniform(const ConfigSeed& cfg, const RenormVertex& w);

// Frontier still alive after max_steps visits.
bool site_exploration_alive(const ConfigSeed& cfg, double gamma, uint64_t max_steps);

EstimateResult estimate_site_survival(double gamma, uint64_t max_steps, uint64_t trials,
                                      uint64_t master_seed);

struct ThresholdScanRow {
  double gamma = 0.0;
  EstimateResult est;
};

struct ThresholdScan {
  std::vector<ThresholdScanRow> rows;
  // Midpoint of the first step where survival rises through min_survival.
  // Desk-scale empirical estimate only.
  double crossing_estimate = 0.0;
  double min_survival = 0.0;
};

ThresholdScan scan_site_threshold(double gamma_lo, double gamma_hi, int points,
                                  uint64_t max_steps, uint64_t trials, uint64_t master_seed,
                                  double min_survival = 0.05);

}  // namespace perctrunc
