#include "perctrunc/sampler.hpp"

#include "perctrunc/errors.hpp"

namespace perctrunc {

double uniform_at(const ConfigSeed& cfg, const EdgeId& e) {
  if (!is_canonical(e)) throw ValidationError("non-canonical edge: " + describe(e));
  return EdgeSampler(cfg).uniform(e);
}

bool is_open(const ConfigSeed& cfg, const EdgeId& e, const ProbSequence& seq, int64_t K,
             std::optional<double> delta) {
  if (K < 1) throw ValidationError("truncation K must be >= 1");
  if (is_vertical(e)) {
    if (!delta) throw ValidationError("vertical bond needs the delta parameter");
    return uniform_at(cfg, e) < *delta;
  }
  if (delta) throw ValidationError("delta applies to vertical bonds only");
  const int64_t len = bond_length(e);
  if (len > K) return false;
  return uniform_at(cfg, e) < seq.eval(len);
}

}  // namespace perctrunc
