#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace perctrunc {

// Bond universe tags. Oriented bonds are directed and stored as-is; aniso and
// line bonds are undirected and kept in canonical form (positive displacement
// from the stored base vertex).
enum class EdgeModel : uint8_t { Oriented = 1, AnisoH = 2, AnisoV = 3, Line1d = 4 };

inline constexpr int kMaxOrientedDim = 5;
inline constexpr uint8_t kEdgeEncodingVersion = 1;
inline constexpr const char* kEdgeEncodingName = "edge-enc/v1";

struct EdgeId {
  EdgeModel model = EdgeModel::Oriented;
  uint8_t dim = 1;   // oriented spatial dimension d
  uint8_t axis = 1;  // oriented displacement axis, 1-based
  // Oriented: signed step n != 0. AnisoH: length n >= 1. AnisoV: 1. Line1d: gap j-i >= 1.
  int64_t step = 0;
  // Oriented: x_1..x_d, then level m at coord[dim]. AnisoH/V: (x, y). Line1d: (i).
  std::array<int64_t, kMaxOrientedDim + 1> coord{};

  bool operator==(const EdgeId&) const = default;
};

bool is_canonical(const EdgeId& e);

// The n whose p_n governs the bond; vertical aniso bonds count as length 1.
int64_t bond_length(const EdgeId& e);

inline bool is_vertical(const EdgeId& e) { return e.model == EdgeModel::AnisoV; }

// <(x,m),(x+step*e_axis,m+1)>
EdgeId oriented_edge(std::span<const int64_t> x, int64_t m, int axis, int64_t step);
EdgeId oriented_edge1(int64_t x, int64_t m, int64_t step);  // d = 1

EdgeId aniso_horizontal(int64_t x, int64_t y, int64_t len);           // {(x,y),(x+len,y)}
EdgeId aniso_horizontal_between(int64_t x1, int64_t x2, int64_t y);   // normalized
EdgeId aniso_vertical(int64_t x, int64_t y);                          // {(x,y),(x,y+1)}
EdgeId line_bond(int64_t i, int64_t j);                               // normalized, on Z+

// Versioned canonical encoding: fixed field order, one word per field.
// Returns the number of words written (<= out.size()).
size_t encode_words(const EdgeId& e, std::array<uint64_t, 9>& out);

std::string describe(const EdgeId& e);

struct EdgeIdHash {
  size_t operator()(const EdgeId& e) const;
};

// Outcome of a compound bond event together with the edges actually queried,
// in evaluation order.
struct EventOutcome {
  bool occurred = false;
  std::vector<EdgeId> read;
};

}  // namespace perctrunc
