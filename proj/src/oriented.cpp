#include "perctrunc/oriented.hpp"

#include <algorithm>
#include <bit>
#include <chrono>

#include "perctrunc/errors.hpp"
#include "perctrunc/parallel.hpp"
#include "perctrunc/rng.hpp"

namespace perctrunc {

namespace {

constexpr int64_t kMaxRange = 1 << 20;
constexpr int64_t kMaxArena = 100000000;  // bound on K*H for the d=1 bitmap
constexpr size_t kFastFrontierCap = 32;

void check_args(int64_t K, int d) {
  if (d < 1 || d > kMaxOrientedDim) throw ValidationError("oriented dimension d out of range");
  if (K < 1) throw ValidationError("truncation K must be >= 1");
  if (K > kMaxRange) throw ValidationError("truncation K too large to enumerate bonds");
}

using Coord = std::array<int64_t, kMaxOrientedDim>;

// Hash chain identical to uniform_at(cfg, oriented_edge(...)); kept inline
// because this is the innermost loop of every survival estimate.
inline double oriented_uniform(uint64_t key, int dim, int axis1, int64_t step,
                               const int64_t* x, int64_t m) {
  uint64_t h = key;
  const uint64_t meta = static_cast<uint64_t>(kEdgeEncodingVersion) |
                        (static_cast<uint64_t>(EdgeModel::Oriented) << 8) |
                        (static_cast<uint64_t>(dim) << 16) |
                        (static_cast<uint64_t>(axis1) << 24);
  h = mix64(h ^ meta);
  h = mix64(h ^ std::bit_cast<uint64_t>(step));
  for (int i = 0; i < dim; ++i) h = mix64(h ^ std::bit_cast<uint64_t>(x[i]));
  h = mix64(h ^ std::bit_cast<uint64_t>(m));
  h = mix64(h ^ (0xff51afd7ed558ccdULL + static_cast<uint64_t>(dim) + 3));
  return to_unit(h);
}

struct PassResult {
  bool reached = false;
  bool truncated = false;
};

// d=1 frontier expansion with bitmap dedup over the light cone |x| <= K*H.
// With cap == SIZE_MAX the per-level frontier is the exact reachable set;
// smaller caps keep the cap smallest coordinates, so survival of the capped
// subset still certifies reachability.
PassResult frontier_pass_d1(const ConfigSeed& cfg, const ProbSequence& seq, int64_t K,
                            int64_t H, size_t cap) {
  const uint64_t key = chain_key(cfg.master, cfg.trial);
  std::vector<double> thr(static_cast<size_t>(K) + 1, 0.0);
  for (int64_t n = 1; n <= K; ++n) thr[static_cast<size_t>(n)] = seq.eval(n);

  const int64_t lo = -K * H - 1;
  const size_t span = static_cast<size_t>(2 * K * H + 3);
  std::vector<uint64_t> bits((span + 63) / 64, 0);
  auto test_and_set = [&](int64_t x) {
    const size_t i = static_cast<size_t>(x - lo);
    const uint64_t mask = 1ULL << (i & 63);
    if (bits[i >> 6] & mask) return false;
    bits[i >> 6] |= mask;
    return true;
  };
  auto clear_bit = [&](int64_t x) {
    const size_t i = static_cast<size_t>(x - lo);
    bits[i >> 6] &= ~(1ULL << (i & 63));
  };

  std::vector<int64_t> frontier{0};
  std::vector<int64_t> next;
  PassResult res;
  for (int64_t m = 0; m < H; ++m) {
    next.clear();
    for (const int64_t x : frontier) {
      for (int64_t n = -K; n <= K; ++n) {
        if (n == 0) continue;
        const double p = thr[static_cast<size_t>(n >= 0 ? n : -n)];
        if (p <= 0.0) continue;
        if (oriented_uniform(key, 1, 1, n, &x, m) < p && test_and_set(x + n)) {
          next.push_back(x + n);
        }
      }
    }
    for (const int64_t x : next) clear_bit(x);
    if (next.empty()) return res;
    if (next.size() > cap) {
      std::nth_element(next.begin(), next.begin() + static_cast<ptrdiff_t>(cap), next.end());
      next.resize(cap);
      res.truncated = true;
    }
    frontier.swap(next);
  }
  res.reached = true;
  return res;
}

// Generic d >= 1 variant; dedup by sorting, adequate at desk scale.
PassResult frontier_pass_nd(const ConfigSeed& cfg, const ProbSequence& seq, int64_t K,
                            int64_t H, int d, size_t cap) {
  const uint64_t key = chain_key(cfg.master, cfg.trial);
  std::vector<double> thr(static_cast<size_t>(K) + 1, 0.0);
  for (int64_t n = 1; n <= K; ++n) thr[static_cast<size_t>(n)] = seq.eval(n);

  std::vector<Coord> frontier{Coord{}};
  std::vector<Coord> next;
  PassResult res;
  for (int64_t m = 0; m < H; ++m) {
    next.clear();
    for (const Coord& c : frontier) {
      for (int a = 0; a < d; ++a) {
        for (int64_t n = -K; n <= K; ++n) {
          if (n == 0) continue;
          const double p = thr[static_cast<size_t>(n >= 0 ? n : -n)];
          if (p <= 0.0) continue;
          if (oriented_uniform(key, d, a + 1, n, c.data(), m) < p) {
            Coord child = c;
            child[a] += n;
            next.push_back(child);
          }
        }
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (next.empty()) return res;
    if (next.size() > cap) {
      next.resize(cap);
      res.truncated = true;
    }
    frontier.swap(next);
  }
  res.reached = true;
  return res;
}

PassResult frontier_pass(const ConfigSeed& cfg, const ProbSequence& seq, int64_t K, int64_t H,
                         int d, size_t cap) {
  if (d == 1) return frontier_pass_d1(cfg, seq, K, H, cap);
  return frontier_pass_nd(cfg, seq, K, H, d, cap);
}

}  // namespace

std::vector<EdgeId> out_edges(const OrientedVertex& v, int64_t K, int d) {
  check_args(K, d);
  if (v.m < 0) throw ValidationError("oriented level m must be >= 0");
  std::vector<EdgeId> out;
  out.reserve(static_cast<size_t>(2 * K * d));
  const std::span<const int64_t> xs{v.x.data(), static_cast<size_t>(d)};
  for (int a = 1; a <= d; ++a) {
    for (int64_t n = -K; n <= K; ++n) {
      if (n == 0) continue;
      out.push_back(oriented_edge(xs, v.m, a, n));
    }
  }
  return out;
}

bool reaches_level(const ConfigSeed& cfg, const ProbSequence& seq, int64_t K, int64_t H,
                   int d) {
  check_args(K, d);
  if (H < 1) throw ValidationError("height H must be >= 1");
  if (d == 1 && K * H > kMaxArena) throw ValidationError("K*H too large");
  const PassResult fast = frontier_pass(cfg, seq, K, H, d, kFastFrontierCap);
  if (fast.reached || !fast.truncated) return fast.reached;
  return frontier_pass(cfg, seq, K, H, d, SIZE_MAX).reached;
}

EstimateResult estimate_survival(const ProbSequence& seq, int64_t K, int64_t H, int d,
                                 uint64_t trials, uint64_t master_seed) {
  check_args(K, d);
  if (trials == 0) throw ValidationError("trials must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  const uint64_t successes = count_trials(trials, [&](uint64_t t) {
    return reaches_level(ConfigSeed{master_seed, t}, seq, K, H, d);
  });
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return make_estimate(successes, trials, master_seed, ms);
}

}  // namespace perctrunc
