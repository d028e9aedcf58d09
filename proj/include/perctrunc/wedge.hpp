#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace perctrunc {

// Site (v,u) of the renormalized wedge V* = {(v,u) in Z+^2 : v <= u}, with
// oriented edges to (v,u+1) and (v+1,u+1).
struct RenormVertex {
  int64_t v = 0;
  int64_t u = 0;
  bool operator==(const RenormVertex&) const = default;
};

// The exploration order: by u, then by v.
struct PrecLess {
  bool operator()(const RenormVertex& a, const RenormVertex& b) const {
    return a.u < b.u || (a.u == b.u && a.v < b.v);
  }
};

using VertexSet = std::set<RenormVertex, PrecLess>;

inline bool in_wedge(const RenormVertex& w) { return w.v >= 0 && w.u >= w.v; }

// {(v,u) in V* \ A : (v-1,u-1) in A or (v,u-1) in A}
inline VertexSet exterior_boundary(const VertexSet& A) {
  VertexSet out;
  for (const RenormVertex& a : A) {
    for (const RenormVertex c : {RenormVertex{a.v, a.u + 1}, RenormVertex{a.v + 1, a.u + 1}}) {
      if (in_wedge(c) && !A.contains(c)) out.insert(c);
    }
  }
  return out;
}

// The minimal element of (exterior_boundary(A)) \ B, if any.
inline std::optional<RenormVertex> next_vertex(const VertexSet& A, const VertexSet& B) {
  for (const RenormVertex& w : exterior_boundary(A)) {
    if (!B.contains(w)) return w;
  }
  return std::nullopt;
}

struct WedgeExploration {
  VertexSet A;
  VertexSet B;
  std::vector<std::pair<RenormVertex, bool>> visits;  // in visit order
  uint64_t steps = 0;
  bool frontier_alive = false;  // (boundary of A) \ B nonempty at halt
};

// Runs the exploration: the seed (0,0) is tested first; afterwards the
// minimal unexplored boundary vertex is visited until the frontier empties or
// max_steps visits have been made. accept decides each visit.
template <class AcceptFn>
WedgeExploration explore_wedge(AcceptFn&& accept, uint64_t max_steps) {
  WedgeExploration st;
  if (max_steps == 0) return st;
  VertexSet frontier;  // maintained equal to (exterior_boundary(A)) \ B
  auto visit = [&](const RenormVertex& w) {
    const bool ok = accept(w);
    st.visits.emplace_back(w, ok);
    ++st.steps;
    if (ok) {
      st.A.insert(w);
      const RenormVertex c1{w.v, w.u + 1};
      const RenormVertex c2{w.v + 1, w.u + 1};
      if (!st.B.contains(c1)) frontier.insert(c1);
      if (!st.B.contains(c2)) frontier.insert(c2);
    } else {
      st.B.insert(w);
    }
  };
  visit(RenormVertex{0, 0});
  while (st.steps < max_steps && !frontier.empty()) {
    const RenormVertex w = *frontier.begin();
    frontier.erase(frontier.begin());
    visit(w);
  }
  st.frontier_alive = !frontier.empty();
  return st;
}

}  // namespace perctrunc
