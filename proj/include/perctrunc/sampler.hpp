#pragma once

#include <cstdint>
#include <limits>
#include <optional>

#include "perctrunc/edge.hpp"
#include "perctrunc/rng.hpp"
#include "perctrunc/sequence.hpp"

namespace perctrunc {

// (master seed, trial index) fully determines every edge's uniform variate;
// a configuration is never stored, only queried edge by edge.
struct ConfigSeed {
  uint64_t master = 0;
  uint64_t trial = 0;
};

inline constexpr int64_t kNoTruncation = std::numeric_limits<int64_t>::max();

// The coupling variate U_e. Rejects non-canonical edges.
double uniform_at(const ConfigSeed& cfg, const EdgeId& e);

// Open iff bond_length(e) <= K and U_e < p_{bond_length(e)}. Vertical aniso
// bonds compare against delta instead and are never truncated. The same
// variate is used for every K, which yields the monotone coupling across
// truncation levels.
bool is_open(const ConfigSeed& cfg, const EdgeId& e, const ProbSequence& seq, int64_t K,
             std::optional<double> delta = std::nullopt);

// Caches the per-(seed,trial) half of the hash chain for hot loops. Produces
// bit-identical variates to uniform_at.
class EdgeSampler {
public:
  explicit EdgeSampler(const ConfigSeed& cfg) : key_(chain_key(cfg.master, cfg.trial)) {}

  double uniform(const EdgeId& e) const {
    std::array<uint64_t, 9> w;
    const size_t n = encode_words(e, w);
    return to_unit(chain_words(key_, {w.data(), n}));
  }

private:
  uint64_t key_;
};

}  // namespace perctrunc
