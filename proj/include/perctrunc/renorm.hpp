#pragma once

#include <cstdint>
#include <vector>

#include "perctrunc/edge.hpp"
#include "perctrunc/estimate.hpp"
#include "perctrunc/sampler.hpp"
#include "perctrunc/sequence.hpp"
#include "perctrunc/wedge.hpp"

namespace perctrunc {

// Block construction parameters: k = min support, M and K the smallest
// integers with (1-p_k^2)^M < eps/3 and
// 1-exp(-sum_{i=k+1}^K p_i^2) >= (1-eps/3)^(1/(M+1)).
struct BlockParams {
  double epsilon = 0.0;
  int64_t k = 1;
  int64_t M = 1;
  int64_t K = 2;
  bool minimal = false;  // set when produced by choose_block_params
};

BlockParams choose_block_params(const ProbSequence& seq, double epsilon,
                                int64_t horizon = 1000000);

// p_k^2
double prob_L(const ProbSequence& seq, int64_t horizon = 1000000);

// 1 - prod_{i=k+1}^K (1 - p_i^2)
double prob_S_exact(const ProbSequence& seq, int64_t k, int64_t K);

// P(S)^(2(M+1)) * (1 - (1-p_k^2)^M); for minimal parameters also checks the
// chain P(T) >= (1-eps/3)^3 >= 1-eps.
double prob_T_exact(const ProbSequence& seq, const BlockParams& bp);

enum class BlockEventKind { R, S, L, T };

struct BlockEvent {
  BlockEventKind kind = BlockEventKind::T;
  int sign = +1;   // R/S/T direction; ignored for L
  int64_t i = 0;   // R only: excursion length
};

// Evaluates the block event anchored at (x,m) on the lazy configuration under
// truncation K_trunc (must be >= bp.K).
EventOutcome eval_event(const ConfigSeed& cfg, const ProbSequence& seq, int64_t K_trunc,
                        const BlockEvent& ev, int64_t x, int64_t m, const BlockParams& bp);

// The full edge set of the event, independent of evaluation order. T spans
// columns x and x+2k, rows m .. m+2(M+1).
std::vector<EdgeId> nominal_footprint(const BlockEvent& ev, int64_t x, int64_t m,
                                      const BlockParams& bp);

struct ExplorationStep {
  RenormVertex site;
  bool accepted = false;
  std::vector<EdgeId> footprint;  // nominal footprint of the tested block event
};

struct ExplorationState {
  VertexSet A;
  VertexSet B;
  std::vector<ExplorationStep> log;
  uint64_t steps = 0;
  bool frontier_alive = false;
  ConfigSeed cfg;
  BlockParams bp;
};

// The renormalized exploration: site (v,u) is accepted iff T^+/T^- (by parity
// of v) occurs at (2kv, 2(M+1)u). Footprint recording can be switched off for
// long survival runs that never inspect the log.
ExplorationState explore(const ConfigSeed& cfg, const ProbSequence& seq,
                         const BlockParams& bp, uint64_t max_steps,
                         bool record_footprints = true);

struct CouplingReport {
  uint64_t footprint_edges = 0;
  uint64_t footprint_violations = 0;  // edges shared by two exploration steps
  uint64_t bfs_checks = 0;
  uint64_t bfs_failures = 0;
};

// Re-derives what the exploration certifies from the raw configuration:
// (i) step footprints are pairwise disjoint, (ii) for every accepted (v,u) an
// oriented BFS reaches (2kv, 2(M+1)(u+1)) and (2k(v+1), 2(M+1)(u+1)) from the
// origin.
CouplingReport verify_coupling(const ExplorationState& state, const ConfigSeed& cfg,
                               const ProbSequence& seq, const BlockParams& bp);

// Empirical reference threshold for oriented site percolation on the wedge;
// reported alongside survival estimates, never asserted.
inline constexpr double kOrientedSiteThresholdRef = 0.7055;

struct ExplorationSurvival {
  EstimateResult est;
  BlockParams bp;
  double event_probability = 0.0;  // exact P(T) for the chosen parameters
  double threshold_ref = kOrientedSiteThresholdRef;
};

// Fraction of explorations whose frontier is still alive after max_steps.
ExplorationSurvival estimate_exploration_survival(const ProbSequence& seq, double epsilon,
                                                  uint64_t trials, uint64_t max_steps,
                                                  uint64_t master_seed,
                                                  int64_t horizon = 1000000);

}  // namespace perctrunc
