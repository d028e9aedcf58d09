#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "perctrunc/edge.hpp"
#include "perctrunc/estimate.hpp"
#include "perctrunc/sampler.hpp"
#include "perctrunc/sequence.hpp"

namespace perctrunc {

// Vertex (x, m) of the oriented graph: x in Z^d, level m >= 0.
struct OrientedVertex {
  std::array<int64_t, kMaxOrientedDim> x{};
  int dim = 1;
  int64_t m = 0;
};

// The 2Kd bonds from v to level m+1: displacement n*e_i, 1 <= |n| <= K.
std::vector<EdgeId> out_edges(const OrientedVertex& v, int64_t K, int d);

// True iff an open oriented path runs from (0,0) to some vertex at level H.
// Exact: a capped frontier pass is used first (a surviving subset certifies
// reachability); on death the frontier is recomputed without the cap.
bool reaches_level(const ConfigSeed& cfg, const ProbSequence& seq, int64_t K, int64_t H,
                   int d);

// Fraction of trials whose configuration reaches level H, with Wilson CI.
EstimateResult estimate_survival(const ProbSequence& seq, int64_t K, int64_t H, int d,
                                 uint64_t trials, uint64_t master_seed);

}  // namespace perctrunc
