#include "perctrunc/renorm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <unordered_set>

#include "perctrunc/errors.hpp"
#include "perctrunc/parallel.hpp"

namespace perctrunc {

namespace {

constexpr int64_t kMaxM = 100000000;

long double pow_ld(long double base, int64_t e) {
  long double r = 1.0L;
  long double b = base;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace

BlockParams choose_block_params(const ProbSequence& seq, double epsilon, int64_t horizon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("epsilon must lie in (0,1)");
  const auto k_opt = support_min(seq, horizon);
  if (!k_opt) throw UnsatisfiableError("sequence has empty support within horizon");
  const int64_t k = *k_opt;
  const long double pk2 = static_cast<long double>(seq.eval(k)) * seq.eval(k);
  const long double eps3 = static_cast<long double>(epsilon) / 3.0L;

  int64_t M = 0;
  long double factor_pow = 1.0L;  // (1-p_k^2)^M
  while (factor_pow >= eps3) {
    factor_pow *= (1.0L - pk2);
    if (++M > kMaxM) throw UnsatisfiableError("no practical M satisfies (1-p_k^2)^M < eps/3");
  }

  const long double threshold =
      std::pow(1.0L - eps3, 1.0L / static_cast<long double>(M + 1));
  int64_t K = 0;
  long double sum_sq = 0.0L;  // sum_{i=k+1}^K p_i^2
  for (int64_t i = k + 1; i <= horizon; ++i) {
    const long double p = seq.eval(i);
    sum_sq += p * p;
    if (1.0L - std::exp(-sum_sq) >= threshold) {
      K = i;
      break;
    }
  }
  if (K == 0) {
    throw UnsatisfiableError(
        "1-exp(-sum p_i^2) cannot reach (1-eps/3)^(1/(M+1)) within horizon; "
        "the tail square sum is too small");
  }

  BlockParams bp{epsilon, k, M, K, true};

  // Minimality self-checks; these are construction guarantees.
  if (!(pow_ld(1.0L - pk2, M) < eps3)) throw std::logic_error("block M inequality broken");
  if (M > 1 && pow_ld(1.0L - pk2, M - 1) < eps3) throw std::logic_error("block M not minimal");
  long double sum_prev = sum_sq - static_cast<long double>(seq.eval(K)) * seq.eval(K);
  if (1.0L - std::exp(-sum_prev) >= threshold) throw std::logic_error("block K not minimal");
  return bp;
}

double prob_L(const ProbSequence& seq, int64_t horizon) {
  const auto k = support_min(seq, horizon);
  if (!k) throw UnsatisfiableError("sequence has empty support within horizon");
  const double pk = seq.eval(*k);
  return pk * pk;
}

double prob_S_exact(const ProbSequence& seq, int64_t k, int64_t K) {
  if (K <= k) throw ValidationError("prob_S_exact requires K > k");
  long double prod = 1.0L;
  for (int64_t i = k + 1; i <= K; ++i) {
    const long double p = seq.eval(i);
    prod *= (1.0L - p * p);
  }
  return static_cast<double>(1.0L - prod);
}

double prob_T_exact(const ProbSequence& seq, const BlockParams& bp) {
  const long double ps = prob_S_exact(seq, bp.k, bp.K);
  const long double pk = seq.eval(bp.k);
  const long double ladder = 1.0L - pow_ld(1.0L - pk * pk, bp.M);
  const long double value = pow_ld(ps, 2 * (bp.M + 1)) * ladder;
  if (bp.minimal) {
    const long double chain = pow_ld(1.0L - static_cast<long double>(bp.epsilon) / 3.0L, 3);
    if (value + 1e-12L < chain) throw std::logic_error("P(T) chain bound broken");
  }
  return static_cast<double>(value);
}

namespace {

struct EventEval {
  const EdgeSampler& sampler;
  const ProbSequence& seq;
  int64_t K_trunc;
  std::vector<EdgeId>* read = nullptr;

  bool open(const EdgeId& e) {
    if (read) read->push_back(e);
    const int64_t len = bond_length(e);
    if (len > K_trunc) return false;
    return sampler.uniform(e) < seq.eval(len);
  }

  // R^sign_{(x,m)}(i): both legs of the excursion through (x+sign*i, m+1).
  bool eval_R(int64_t x, int64_t m, int sign, int64_t i) {
    const int64_t d = sign >= 0 ? i : -i;
    if (!open(oriented_edge1(x, m, d))) return false;
    return open(oriented_edge1(x + d, m + 1, -d));
  }

  bool eval_S(int64_t x, int64_t m, int sign, const BlockParams& bp) {
    for (int64_t i = bp.k + 1; i <= bp.K; ++i) {
      if (eval_R(x, m, sign, i)) return true;
    }
    return false;
  }

  bool eval_L(int64_t x, int64_t m, const BlockParams& bp) {
    if (!open(oriented_edge1(x, m, bp.k))) return false;
    return open(oriented_edge1(x + bp.k, m + 1, bp.k));
  }

  bool eval_T(int64_t x, int64_t m, int sign, const BlockParams& bp) {
    for (int64_t i = 0; i <= bp.M; ++i) {
      if (!eval_S(x, m + 2 * i, sign, bp)) return false;
    }
    for (int64_t i = 0; i <= bp.M; ++i) {
      if (!eval_S(x + 2 * bp.k, m + 2 * i, sign, bp)) return false;
    }
    for (int64_t i = 0; i <= bp.M - 1; ++i) {
      if (eval_L(x, m + 2 * i, bp)) return true;
    }
    return false;
  }
};

void append_R_footprint(std::vector<EdgeId>& out, int64_t x, int64_t m, int sign, int64_t i) {
  const int64_t d = sign >= 0 ? i : -i;
  out.push_back(oriented_edge1(x, m, d));
  out.push_back(oriented_edge1(x + d, m + 1, -d));
}

void append_S_footprint(std::vector<EdgeId>& out, int64_t x, int64_t m, int sign,
                        const BlockParams& bp) {
  for (int64_t i = bp.k + 1; i <= bp.K; ++i) append_R_footprint(out, x, m, sign, i);
}

void append_L_footprint(std::vector<EdgeId>& out, int64_t x, int64_t m, const BlockParams& bp) {
  out.push_back(oriented_edge1(x, m, bp.k));
  out.push_back(oriented_edge1(x + bp.k, m + 1, bp.k));
}

void check_event(const BlockEvent& ev, const BlockParams& bp) {
  if (ev.kind == BlockEventKind::R && ev.i < 1) {
    throw ValidationError("R event needs excursion length i >= 1");
  }
  if (bp.K <= bp.k) throw ValidationError("block params require K > k");
}

}  // namespace

EventOutcome eval_event(const ConfigSeed& cfg, const ProbSequence& seq, int64_t K_trunc,
                        const BlockEvent& ev, int64_t x, int64_t m, const BlockParams& bp) {
  check_event(ev, bp);
  if (K_trunc < bp.K) {
    throw ValidationError("truncation K_trunc must be >= block K (events use bonds up to K)");
  }
  if (m < 0) throw ValidationError("block anchor level m must be >= 0");
  EventOutcome out;
  EdgeSampler sampler(cfg);
  EventEval ctx{sampler, seq, K_trunc, &out.read};
  switch (ev.kind) {
    case BlockEventKind::R:
      out.occurred = ctx.eval_R(x, m, ev.sign, ev.i);
      break;
    case BlockEventKind::S:
      out.occurred = ctx.eval_S(x, m, ev.sign, bp);
      break;
    case BlockEventKind::L:
      out.occurred = ctx.eval_L(x, m, bp);
      break;
    case BlockEventKind::T:
      out.occurred = ctx.eval_T(x, m, ev.sign, bp);
      break;
  }
  return out;
}

std::vector<EdgeId> nominal_footprint(const BlockEvent& ev, int64_t x, int64_t m,
                                      const BlockParams& bp) {
  check_event(ev, bp);
  std::vector<EdgeId> out;
  switch (ev.kind) {
    case BlockEventKind::R:
      append_R_footprint(out, x, m, ev.sign, ev.i);
      break;
    case BlockEventKind::S:
      append_S_footprint(out, x, m, ev.sign, bp);
      break;
    case BlockEventKind::L:
      append_L_footprint(out, x, m, bp);
      break;
    case BlockEventKind::T:
      for (int64_t i = 0; i <= bp.M; ++i) append_S_footprint(out, x, m + 2 * i, ev.sign, bp);
      for (int64_t i = 0; i <= bp.M; ++i) {
        append_S_footprint(out, x + 2 * bp.k, m + 2 * i, ev.sign, bp);
      }
      for (int64_t i = 0; i <= bp.M - 1; ++i) append_L_footprint(out, x, m + 2 * i, bp);
      break;
  }
  return out;
}

ExplorationState explore(const ConfigSeed& cfg, const ProbSequence& seq, const BlockParams& bp,
                         uint64_t max_steps, bool record_footprints) {
  if (max_steps == 0) throw ValidationError("max_steps must be >= 1");
  ExplorationState st;
  st.cfg = cfg;
  st.bp = bp;
  EdgeSampler sampler(cfg);
  EventEval ctx{sampler, seq, bp.K, nullptr};
  auto accept = [&](const RenormVertex& w) {
    const int sign = (w.v % 2 == 0) ? +1 : -1;
    const int64_t x = 2 * bp.k * w.v;
    const int64_t m = 2 * (bp.M + 1) * w.u;
    const bool ok = ctx.eval_T(x, m, sign, bp);
    std::vector<EdgeId> fp;
    if (record_footprints) {
      fp = nominal_footprint(BlockEvent{BlockEventKind::T, sign, 0}, x, m, bp);
    }
    st.log.push_back(ExplorationStep{w, ok, std::move(fp)});
    return ok;
  };
  WedgeExploration core = explore_wedge(accept, max_steps);
  st.A = std::move(core.A);
  st.B = std::move(core.B);
  st.steps = core.steps;
  st.frontier_alive = core.frontier_alive;
  return st;
}

namespace {

// Reachable x-sets per level for oriented d=1 percolation truncated at K,
// restricted to a column window (every path the block events certify stays
// inside the window the caller passes).
std::vector<std::vector<int64_t>> reach_by_level(const ConfigSeed& cfg, const ProbSequence& seq,
                                                 int64_t K, int64_t max_level, int64_t x_lo,
                                                 int64_t x_hi) {
  EdgeSampler sampler(cfg);
  std::vector<double> thr(static_cast<size_t>(K) + 1, 0.0);
  for (int64_t n = 1; n <= K; ++n) thr[static_cast<size_t>(n)] = seq.eval(n);
  std::vector<std::vector<int64_t>> levels;
  levels.reserve(static_cast<size_t>(max_level) + 1);
  levels.push_back({0});
  std::vector<int64_t> next;
  for (int64_t m = 0; m < max_level; ++m) {
    next.clear();
    for (int64_t x : levels.back()) {
      for (int64_t n = -K; n <= K; ++n) {
        if (n == 0) continue;
        const int64_t child = x + n;
        if (child < x_lo || child > x_hi) continue;
        const double p = thr[static_cast<size_t>(n >= 0 ? n : -n)];
        if (p <= 0.0) continue;
        if (sampler.uniform(oriented_edge1(x, m, n)) < p) next.push_back(child);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    levels.push_back(next);
    if (next.empty()) break;
  }
  return levels;
}

bool level_contains(const std::vector<std::vector<int64_t>>& levels, int64_t level, int64_t x) {
  if (level < 0 || level >= static_cast<int64_t>(levels.size())) return false;
  const auto& row = levels[static_cast<size_t>(level)];
  return std::binary_search(row.begin(), row.end(), x);
}

}  // namespace

CouplingReport verify_coupling(const ExplorationState& state, const ConfigSeed& cfg,
                               const ProbSequence& seq, const BlockParams& bp) {
  if (state.cfg.master != cfg.master || state.cfg.trial != cfg.trial ||
      state.bp.k != bp.k || state.bp.M != bp.M || state.bp.K != bp.K) {
    throw ValidationError("verify_coupling: state was produced under different cfg/params");
  }
  CouplingReport rep;

  std::unordered_set<EdgeId, EdgeIdHash> seen;
  for (const ExplorationStep& step : state.log) {
    for (const EdgeId& e : step.footprint) {
      ++rep.footprint_edges;
      if (!seen.insert(e).second) ++rep.footprint_violations;
    }
  }

  if (state.A.empty()) return rep;

  int64_t v_max = 0;
  int64_t u_max = 0;
  for (const RenormVertex& w : state.A) {
    v_max = std::max(v_max, w.v);
    u_max = std::max(u_max, w.u);
  }
  const int64_t max_level = 2 * (bp.M + 1) * (u_max + 1);
  const int64_t x_lo = -bp.K - 2 * bp.k;
  const int64_t x_hi = 2 * bp.k * (v_max + 2) + bp.K;
  const auto levels = reach_by_level(cfg, seq, bp.K, max_level, x_lo, x_hi);

  for (const RenormVertex& w : state.A) {
    const int64_t target_level = 2 * (bp.M + 1) * (w.u + 1);
    for (const int64_t tx : {2 * bp.k * w.v, 2 * bp.k * (w.v + 1)}) {
      ++rep.bfs_checks;
      if (!level_contains(levels, target_level, tx)) ++rep.bfs_failures;
    }
  }
  return rep;
}

ExplorationSurvival estimate_exploration_survival(const ProbSequence& seq, double epsilon,
                                                  uint64_t trials, uint64_t max_steps,
                                                  uint64_t master_seed, int64_t horizon) {
  if (trials == 0) throw ValidationError("trials must be >= 1");
  const BlockParams bp = choose_block_params(seq, epsilon, horizon);
  const auto t0 = std::chrono::steady_clock::now();
  const uint64_t successes = count_trials(trials, [&](uint64_t t) {
    return explore(ConfigSeed{master_seed, t}, seq, bp, max_steps, false).frontier_alive;
  });
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  ExplorationSurvival out;
  out.est = make_estimate(successes, trials, master_seed, ms);
  out.bp = bp;
  out.event_probability = prob_T_exact(seq, bp);
  return out;
}

}  // namespace perctrunc
