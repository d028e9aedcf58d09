#pragma once

#include <cstdint>
#include <vector>

#include "perctrunc/edge.hpp"
#include "perctrunc/estimate.hpp"
#include "perctrunc/sampler.hpp"
#include "perctrunc/sequence.hpp"

namespace perctrunc {

// The anisotropic long-range square lattice: vertical nearest-neighbor bonds
// open with probability delta, horizontal bonds of length n with p_n,
// truncated at K.
struct AnisoParams {
  double delta = 0.5;
  ProbSequence seq = ProbSequence::constant(0.5);
  int64_t K = 1;
};

// Shift construction parameters: minimal M1 then minimal M2 > M1 with
// exp(-sum_{n=1}^{M1} p_n p_{n+N}) < eps and
// exp(-sum_{n=M1+1}^{M2} p_n p_{n+N}) < eps; K = M2 + N.
struct Thm2Params {
  int64_t N = 1;
  double epsilon = 0.0;
  int64_t M1 = 0;
  int64_t M2 = 0;
  int64_t K = 0;
  bool minimal = false;
};

Thm2Params choose_thm2_params(const ProbSequence& seq, int64_t N, double epsilon,
                              int64_t horizon = 1000000);

// H^- (sign<0, n in [1,M1]) or H^+ (sign>0, n in [M1+1,M2]) at anchor (x,y):
// union over n of {<(x,y),(x+n,y)> and <(x+n,y),(x-N,y)> both open}.
EventOutcome eval_event_H(const ConfigSeed& cfg, const AnisoParams& aniso,
                          const Thm2Params& tp, int64_t x, int64_t y, int sign);

std::vector<EdgeId> footprint_H(const Thm2Params& tp, int64_t x, int64_t y, int sign);

// 1 - prod (1 - p_n p_{n+N}) over the range the sign selects.
double exact_H(const ProbSequence& seq, const Thm2Params& tp, int sign);

// Nearest-neighbor bond of the renormalized lattice L^2.
struct LatticeBond {
  int64_t v1 = 0;
  int64_t v2 = 0;
  bool horizontal = true;  // to (v1+1,v2); otherwise to (v1,v2+1)
};

// X_e: horizontal bonds map to H^-/H^+ (parity of v1) anchored at
// (N(v1+1), v2), so the certified connection joins (N v1, v2) to
// (N(v1+1), v2); vertical bonds map to the single vertical bond at (N v1, v2).
bool red_bond(const ConfigSeed& cfg, const AnisoParams& aniso, const Thm2Params& tp,
              const LatticeBond& e);

std::vector<EdgeId> red_bond_footprint(const Thm2Params& tp, const LatticeBond& e);

struct Thm2Report {
  int64_t box = 0;
  uint64_t bonds = 0;
  uint64_t red_bonds = 0;
  uint64_t footprint_edges = 0;
  uint64_t footprint_violations = 0;  // edges shared by two X_e footprints
  uint64_t path_checks = 0;           // red bonds re-confirmed by BFS in G^an
  uint64_t path_failures = 0;
  uint64_t h_red[2] = {0, 0};    // horizontal red counts: [0] H^-, [1] H^+
  uint64_t h_total[2] = {0, 0};
  uint64_t v_red = 0;
  uint64_t v_total = 0;
};

// Evaluates every X_e in the box [0,box)^2, checks footprint disjointness
// exactly, and re-confirms each red bond's certified connection from the raw
// configuration.
Thm2Report verify_thm2_coupling(const ConfigSeed& cfg, const AnisoParams& aniso,
                                const Thm2Params& tp, int64_t box);

// Window-and-ladder parameters: minimal ell with
// 1-[1-delta^2(1-e^-eta)]^ell > 1-eps/3, user window W > 2*ell, smallest
// k > 2W admitting a minimal M with sum_{n=1}^M p_n p_{n+k} > eta; K = k+M.
struct Thm3Params {
  double eta = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  int64_t ell = 0;
  int64_t W = 0;
  int64_t k = 0;
  int64_t M = 0;
  int64_t K = 0;
  bool minimal = false;
};

// Refuses sequences whose support gcd within the horizon is not 1: the
// construction needs every residue reachable, the gcd=d>1 case lives on the
// sublattice dZ x Z and is not implemented.
Thm3Params choose_thm3_params(const ProbSequence& seq, double delta, double epsilon,
                              double eta, int64_t W, int64_t horizon = 1000000);

// The (k, M) part alone: smallest k > 2W admitting a minimal M with
// sum_{n=1}^M p_n p_{n+k} > eta.
std::pair<int64_t, int64_t> choose_thm3_kM(const ProbSequence& seq, double eta, int64_t W,
                                           int64_t horizon = 1000000);

// Minimal ell with 1-[1-delta^2(1-e^-eta)]^ell > 1-eps/3.
int64_t thm3_min_ell(double delta, double eta, double epsilon);

// A_x(W): the 2*ell+1 marked vertices x+{0..2ell} on row y are in one open
// component of the window x+{0..W} on row y.
bool eval_A(const ConfigSeed& cfg, const AnisoParams& aniso, int64_t x, int64_t y,
            int64_t W, int64_t ell);

// R^+/R^- at (x,y): two vertical legs plus a horizontal excursion on row y+1
// landing k to the right (sign>0) or left (sign<0).
EventOutcome eval_R3(const ConfigSeed& cfg, const AnisoParams& aniso, const Thm3Params& tp,
                     int64_t x, int64_t y, int sign);

std::vector<EdgeId> footprint_R3(const Thm3Params& tp, int64_t x, int64_t y, int sign);

// delta^2 * [1 - prod_{n=1}^M (1 - p_n p_{n+k})]
double exact_R3(const ProbSequence& seq, double delta, const Thm3Params& tp);

// T_x = A_x(W) cap (union_{i<ell} R^+_{x+i}) cap (union_{ell<i<=2ell} R^-_{x+i}).
EventOutcome eval_T3(const ConfigSeed& cfg, const AnisoParams& aniso, const Thm3Params& tp,
                     int64_t x, int64_t y);

std::vector<EdgeId> footprint_T3(const Thm3Params& tp, int64_t x, int64_t y);

// (1-eps/3) * [1 - (1 - delta^2(1-e^-eta))^ell]^2, the FKG lower bound the
// construction guarantees for P(T_x).
double t3_lower_bound(const Thm3Params& tp);

struct Thm3Report {
  bool reached = false;
  uint64_t sites_evaluated = 0;
  uint64_t path_sites = 0;
  uint64_t footprint_edges = 0;
  uint64_t footprint_violations = 0;  // along the verified path
  uint64_t link_checks = 0;           // consecutive path blocks BFS-confirmed
  uint64_t link_failures = 0;
};

// Oriented site percolation on Z+^2 with successors (v1+1,v2) and (v1,v2+1):
// site (v1,v2) is red iff T at (k(v1-v2), 2(v1+v2)). Returns whether a red
// path from (0,0) reaches generation v1+v2 = height; with verify, one found
// path is re-checked block by block against the raw configuration.
Thm3Report red_site_explore(const ConfigSeed& cfg, const AnisoParams& aniso,
                            const Thm3Params& tp, int64_t height, bool verify);

// {0..l} all in one open component of the line graph restricted to {0..L}.
// Bonds are keyed by endpoints alone, so configurations are nested across L.
bool kw_connected(const ConfigSeed& cfg, const ProbSequence& seq, int64_t l, int64_t L);

// P({0..l} connected within {0..L}) on the complete long-range line graph.
EstimateResult kw_connect_prob(const ProbSequence& seq, int64_t l, int64_t L,
                               uint64_t trials, uint64_t master_seed);

// Left-right crossing of an n x n box under nearest-neighbor anisotropic bond
// percolation with parameters (p_v, p_h).
EstimateResult kesten_crossing(double pv, double ph, int64_t n, uint64_t trials,
                               uint64_t master_seed);

}  // namespace perctrunc
