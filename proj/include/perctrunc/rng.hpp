#pragma once

#include <cstdint>
#include <span>

namespace perctrunc {

// Deterministic counter-based variates: every uniform is a pure function of
// (master seed, trial index, message words). No state, no platform dependence,
// identical results under any thread schedule.
//
// The mixer is the splitmix64 finalizer, chained word-by-word with xor
// injection and a length-tagged finalization. Recorded in result files as
// generator "splitmix64-chain/v1".

inline constexpr const char* kGeneratorVersion = "splitmix64-chain/v1";

inline uint64_t mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Key half of the chain; hoist out of hot loops when hashing many messages
// under one (seed, trial).
inline uint64_t chain_key(uint64_t master_seed, uint64_t trial) {
  uint64_t h = mix64(master_seed ^ 0x9e3779b97f4a7c15ULL);
  return mix64(h ^ trial);
}

inline uint64_t chain_words(uint64_t key, std::span<const uint64_t> words) {
  uint64_t h = key;
  for (uint64_t w : words) h = mix64(h ^ w);
  return mix64(h ^ (0xff51afd7ed558ccdULL + words.size()));
}

// Uniform in [0,1) from the top 53 bits.
inline double to_unit(uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace perctrunc
