#include "perctrunc/aniso.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <map>
#include <tuple>
#include <unordered_set>

#include "perctrunc/errors.hpp"
#include "perctrunc/parallel.hpp"

namespace perctrunc {

namespace {

constexpr int64_t kMaxEll = 100000000;
constexpr uint64_t kChooseWorkBudget = 200000000;

class UnionFind {
public:
  explicit UnionFind(size_t n) : parent_(n), size_(n, 1) {
    for (size_t i = 0; i < n; ++i) parent_[i] = i;
  }
  size_t find(size_t p) {
    size_t root = p;
    while (root != parent_[root]) root = parent_[root];
    while (p != root) {
      const size_t next = parent_[p];
      parent_[p] = root;
      p = next;
    }
    return root;
  }
  size_t merge(size_t a, size_t b) {
    size_t ra = find(a);
    size_t rb = find(b);
    if (ra == rb) return ra;
    if (size_[ra] < size_[rb]) std::swap(ra, rb);
    parent_[rb] = ra;
    size_[ra] += size_[rb];
    return ra;
  }
  bool connected(size_t a, size_t b) { return find(a) == find(b); }

private:
  std::vector<size_t> parent_;
  std::vector<size_t> size_;
};

// Evaluation tolerates delta = 0 (everything vertical closed); the parameter
// choosers demand delta > 0.
void check_aniso(const AnisoParams& a) {
  if (!(a.delta >= 0.0 && a.delta <= 1.0)) throw ValidationError("delta must lie in [0,1]");
  if (a.K < 1) throw ValidationError("truncation K must be >= 1");
}

bool h_open(const ConfigSeed& cfg, const AnisoParams& a, const EdgeId& e,
            std::vector<EdgeId>* read) {
  if (read) read->push_back(e);
  return is_open(cfg, e, a.seq, a.K);
}

bool v_open(const ConfigSeed& cfg, const AnisoParams& a, const EdgeId& e,
            std::vector<EdgeId>* read) {
  if (read) read->push_back(e);
  return is_open(cfg, e, a.seq, a.K, a.delta);
}

}  // namespace

Thm2Params choose_thm2_params(const ProbSequence& seq, int64_t N, double epsilon,
                              int64_t horizon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("epsilon must lie in (0,1)");
  if (N < 1) throw ValidationError("shift N must be >= 1");
  if (horizon < 1) throw ValidationError("horizon must be >= 1");

  Thm2Params tp;
  tp.N = N;
  tp.epsilon = epsilon;
  long double sum = 0.0L;
  for (int64_t n = 1; n <= horizon && tp.M1 == 0; ++n) {
    sum += static_cast<long double>(seq.eval(n)) * seq.eval(n + N);
    if (std::exp(-sum) < static_cast<long double>(epsilon)) tp.M1 = n;
  }
  if (tp.M1 == 0) {
    throw UnsatisfiableError("exp(-sum p_n p_{n+N}) cannot drop below eps within horizon");
  }
  sum = 0.0L;
  for (int64_t n = tp.M1 + 1; n <= horizon && tp.M2 == 0; ++n) {
    sum += static_cast<long double>(seq.eval(n)) * seq.eval(n + N);
    if (std::exp(-sum) < static_cast<long double>(epsilon)) tp.M2 = n;
  }
  if (tp.M2 == 0) {
    throw UnsatisfiableError(
        "second block exp(-sum p_n p_{n+N}) cannot drop below eps within horizon");
  }
  tp.K = tp.M2 + N;
  tp.minimal = true;
  return tp;
}

namespace {

void check_thm2(const AnisoParams& a, const Thm2Params& tp) {
  check_aniso(a);
  if (tp.M1 < 1 || tp.M2 <= tp.M1) throw ValidationError("need 1 <= M1 < M2");
  if (a.K < tp.M2 + tp.N) {
    throw ValidationError("truncation K must be >= M2+N (events use bonds up to M2+N)");
  }
}

std::pair<int64_t, int64_t> h_range(const Thm2Params& tp, int sign) {
  return sign < 0 ? std::pair<int64_t, int64_t>{1, tp.M1}
                  : std::pair<int64_t, int64_t>{tp.M1 + 1, tp.M2};
}

}  // namespace

EventOutcome eval_event_H(const ConfigSeed& cfg, const AnisoParams& aniso,
                          const Thm2Params& tp, int64_t x, int64_t y, int sign) {
  check_thm2(aniso, tp);
  EventOutcome out;
  const auto [lo, hi] = h_range(tp, sign);
  for (int64_t n = lo; n <= hi; ++n) {
    if (!h_open(cfg, aniso, aniso_horizontal(x, y, n), &out.read)) continue;
    if (h_open(cfg, aniso, aniso_horizontal(x - tp.N, y, n + tp.N), &out.read)) {
      out.occurred = true;
      return out;
    }
  }
  return out;
}

std::vector<EdgeId> footprint_H(const Thm2Params& tp, int64_t x, int64_t y, int sign) {
  std::vector<EdgeId> out;
  const auto [lo, hi] = h_range(tp, sign);
  for (int64_t n = lo; n <= hi; ++n) {
    out.push_back(aniso_horizontal(x, y, n));
    out.push_back(aniso_horizontal(x - tp.N, y, n + tp.N));
  }
  return out;
}

double exact_H(const ProbSequence& seq, const Thm2Params& tp, int sign) {
  const auto [lo, hi] = h_range(tp, sign);
  long double prod = 1.0L;
  for (int64_t n = lo; n <= hi; ++n) {
    prod *= 1.0L - static_cast<long double>(seq.eval(n)) * seq.eval(n + tp.N);
  }
  return static_cast<double>(1.0L - prod);
}

namespace {

int h_sign_for(int64_t v1) { return (v1 % 2 == 0) ? -1 : +1; }

}  // namespace

bool red_bond(const ConfigSeed& cfg, const AnisoParams& aniso, const Thm2Params& tp,
              const LatticeBond& e) {
  check_thm2(aniso, tp);
  if (e.horizontal) {
    return eval_event_H(cfg, aniso, tp, tp.N * (e.v1 + 1), e.v2, h_sign_for(e.v1)).occurred;
  }
  return v_open(cfg, aniso, aniso_vertical(tp.N * e.v1, e.v2), nullptr);
}

std::vector<EdgeId> red_bond_footprint(const Thm2Params& tp, const LatticeBond& e) {
  if (e.horizontal) return footprint_H(tp, tp.N * (e.v1 + 1), e.v2, h_sign_for(e.v1));
  return {aniso_vertical(tp.N * e.v1, e.v2)};
}

namespace {

// The witness path for a red horizontal bond lives on one row between the
// mapped endpoints and the excursion range; a union-find over that window
// re-derives the connection from raw bonds only.
bool confirm_h_connection(const ConfigSeed& cfg, const AnisoParams& aniso, const Thm2Params& tp,
                          int64_t v1, int64_t y) {
  const int64_t left = tp.N * v1;
  const int64_t right = tp.N * (v1 + 1);
  const int64_t lo = left - tp.N;
  const int64_t hi = right + tp.M2;
  const size_t width = static_cast<size_t>(hi - lo + 1);
  UnionFind uf(width);
  for (int64_t a = lo; a <= hi; ++a) {
    for (int64_t b = a + 1; b <= hi && b - a <= aniso.K; ++b) {
      if (aniso.seq.eval(b - a) <= 0.0) continue;
      if (h_open(cfg, aniso, aniso_horizontal(a, y, b - a), nullptr)) {
        uf.merge(static_cast<size_t>(a - lo), static_cast<size_t>(b - lo));
      }
    }
  }
  return uf.connected(static_cast<size_t>(left - lo), static_cast<size_t>(right - lo));
}

}  // namespace

Thm2Report verify_thm2_coupling(const ConfigSeed& cfg, const AnisoParams& aniso,
                                const Thm2Params& tp, int64_t box) {
  check_thm2(aniso, tp);
  if (box < 2) throw ValidationError("box size must be >= 2");
  Thm2Report rep;
  rep.box = box;
  std::unordered_set<EdgeId, EdgeIdHash> seen;
  auto note_footprint = [&](const std::vector<EdgeId>& fp) {
    for (const EdgeId& e : fp) {
      ++rep.footprint_edges;
      if (!seen.insert(e).second) ++rep.footprint_violations;
    }
  };

  for (int64_t v2 = 0; v2 < box; ++v2) {
    for (int64_t v1 = 0; v1 + 1 < box; ++v1) {
      const LatticeBond e{v1, v2, true};
      ++rep.bonds;
      note_footprint(red_bond_footprint(tp, e));
      const int cls = h_sign_for(v1) < 0 ? 0 : 1;
      ++rep.h_total[cls];
      if (red_bond(cfg, aniso, tp, e)) {
        ++rep.red_bonds;
        ++rep.h_red[cls];
        ++rep.path_checks;
        if (!confirm_h_connection(cfg, aniso, tp, v1, v2)) ++rep.path_failures;
      }
    }
  }
  for (int64_t v2 = 0; v2 + 1 < box; ++v2) {
    for (int64_t v1 = 0; v1 < box; ++v1) {
      const LatticeBond e{v1, v2, false};
      ++rep.bonds;
      note_footprint(red_bond_footprint(tp, e));
      ++rep.v_total;
      if (red_bond(cfg, aniso, tp, e)) {
        ++rep.red_bonds;
        ++rep.v_red;
        ++rep.path_checks;
        if (!v_open(cfg, aniso, aniso_vertical(tp.N * v1, v2), nullptr)) ++rep.path_failures;
      }
    }
  }
  return rep;
}

Thm3Params choose_thm3_params(const ProbSequence& seq, double delta, double epsilon,
                              double eta, int64_t W, int64_t horizon) {
  if (!(delta > 0.0 && delta <= 1.0)) throw ValidationError("delta must lie in (0,1]");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("epsilon must lie in (0,1)");
  if (!(eta > 0.0)) throw ValidationError("eta must be > 0");
  if (W < 1) throw ValidationError("window W must be >= 1");
  if (horizon < 1) throw ValidationError("horizon must be >= 1");

  const auto g = support_gcd(seq, horizon);
  if (!g) throw UnsatisfiableError("sequence has empty support within horizon");
  if (*g != 1) {
    throw ValidationError(
        "support gcd within horizon is " + std::to_string(*g) +
        "; this construction needs gcd 1 (the gcd d>1 case lives on the dZ x Z "
        "sublattice and is not implemented)");
  }

  Thm3Params tp;
  tp.eta = eta;
  tp.epsilon = epsilon;
  tp.delta = delta;
  tp.W = W;
  tp.ell = thm3_min_ell(delta, eta, epsilon);
  if (W <= 2 * tp.ell) {
    throw ValidationError("window W must exceed 2*ell; here ell = " + std::to_string(tp.ell));
  }

  std::tie(tp.k, tp.M) = choose_thm3_kM(seq, eta, W, horizon);
  tp.K = tp.k + tp.M;
  tp.minimal = true;
  return tp;
}

int64_t thm3_min_ell(double delta, double eta, double epsilon) {
  if (!(delta > 0.0 && delta <= 1.0)) throw ValidationError("delta must lie in (0,1]");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("epsilon must lie in (0,1)");
  if (!(eta > 0.0)) throw ValidationError("eta must be > 0");
  const long double q =
      static_cast<long double>(delta) * delta * (1.0L - std::exp(-static_cast<long double>(eta)));
  const long double eps3 = static_cast<long double>(epsilon) / 3.0L;
  int64_t ell = 0;
  long double pw = 1.0L;
  while (pw >= eps3) {
    pw *= (1.0L - q);
    if (++ell > kMaxEll) {
      throw UnsatisfiableError("no practical ell satisfies [1-delta^2(1-e^-eta)]^ell < eps/3");
    }
  }
  return ell;
}

std::pair<int64_t, int64_t> choose_thm3_kM(const ProbSequence& seq, double eta, int64_t W,
                                           int64_t horizon) {
  if (!(eta > 0.0)) throw ValidationError("eta must be > 0");
  if (W < 1) throw ValidationError("window W must be >= 1");
  uint64_t work = 0;
  for (int64_t k = 2 * W + 1; k <= horizon; ++k) {
    long double sum = 0.0L;
    for (int64_t n = 1; n <= horizon; ++n) {
      if (++work > kChooseWorkBudget) {
        throw UnsatisfiableError("no (k,M) within horizon (probe budget exhausted)");
      }
      sum += static_cast<long double>(seq.eval(n)) * seq.eval(n + k);
      if (sum > static_cast<long double>(eta)) return {k, n};
    }
  }
  throw UnsatisfiableError("no k > 2W admits sum p_n p_{n+k} > eta within horizon");
}

namespace {

void check_thm3(const AnisoParams& a, const Thm3Params& tp) {
  check_aniso(a);
  if (tp.ell < 1 || tp.W <= 2 * tp.ell) throw ValidationError("need window W > 2*ell >= 2");
  if (tp.k <= 2 * tp.W || tp.M < 1) throw ValidationError("need k > 2W and M >= 1");
  if (a.K < tp.k + tp.M) {
    throw ValidationError("truncation K must be >= k+M (events use bonds up to k+M)");
  }
}

bool eval_A_impl(const ConfigSeed& cfg, const AnisoParams& aniso, int64_t x, int64_t y,
                 int64_t W, int64_t ell, std::vector<EdgeId>* read) {
  UnionFind uf(static_cast<size_t>(W) + 1);
  for (int64_t i = 0; i <= W; ++i) {
    for (int64_t j = i + 1; j <= W && j - i <= aniso.K; ++j) {
      if (aniso.seq.eval(j - i) <= 0.0) continue;
      if (h_open(cfg, aniso, aniso_horizontal(x + i, y, j - i), read)) {
        uf.merge(static_cast<size_t>(i), static_cast<size_t>(j));
      }
    }
  }
  const size_t root = uf.find(0);
  for (int64_t i = 1; i <= 2 * ell; ++i) {
    if (uf.find(static_cast<size_t>(i)) != root) return false;
  }
  return true;
}

bool eval_R3_impl(const ConfigSeed& cfg, const AnisoParams& aniso, const Thm3Params& tp,
                  int64_t x, int64_t y, int sign, std::vector<EdgeId>* read) {
  if (!v_open(cfg, aniso, aniso_vertical(x, y), read)) return false;
  const int64_t landing = sign >= 0 ? x + tp.k : x - tp.k;
  if (!v_open(cfg, aniso, aniso_vertical(landing, y + 1), read)) return false;
  for (int64_t n = 1; n <= tp.M; ++n) {
    // Excursion through x + (n+k) (sign>0) or x + n (sign<0) on row y+1.
    const int64_t via = sign >= 0 ? x + n + tp.k : x + n;
    if (!h_open(cfg, aniso, aniso_horizontal_between(x, via, y + 1), read)) continue;
    if (h_open(cfg, aniso, aniso_horizontal_between(via, landing, y + 1), read)) return true;
  }
  return false;
}

}  // namespace

bool eval_A(const ConfigSeed& cfg, const AnisoParams& aniso, int64_t x, int64_t y, int64_t W,
            int64_t ell) {
  check_aniso(aniso);
  if (ell < 1) throw ValidationError("ell must be >= 1");
  if (W <= 2 * ell) throw ValidationError("window W must exceed 2*ell");
  return eval_A_impl(cfg, aniso, x, y, W, ell, nullptr);
}

EventOutcome eval_R3(const ConfigSeed& cfg, const AnisoParams& aniso, const Thm3Params& tp,
                     int64_t x, int64_t y, int sign) {
  check_thm3(aniso, tp);
  EventOutcome out;
  out.occurred = eval_R3_impl(cfg, aniso, tp, x, y, sign, &out.read);
  return out;
}

std::vector<EdgeId> footprint_R3(const Thm3Params& tp, int64_t x, int64_t y, int sign) {
  std::vector<EdgeId> out;
  const int64_t landing = sign >= 0 ? x + tp.k : x - tp.k;
  out.push_back(aniso_vertical(x, y));
  out.push_back(aniso_vertical(landing, y + 1));
  for (int64_t n = 1; n <= tp.M; ++n) {
    const int64_t via = sign >= 0 ? x + n + tp.k : x + n;
    out.push_back(aniso_horizontal_between(x, via, y + 1));
    out.push_back(aniso_horizontal_between(via, landing, y + 1));
  }
  return out;
}

double exact_R3(const ProbSequence& seq, double delta, const Thm3Params& tp) {
  long double prod = 1.0L;
  for (int64_t n = 1; n <= tp.M; ++n) {
    prod *= 1.0L - static_cast<long double>(seq.eval(n)) * seq.eval(n + tp.k);
  }
  return delta * delta * static_cast<double>(1.0L - prod);
}

EventOutcome eval_T3(const ConfigSeed& cfg, const AnisoParams& aniso, const Thm3Params& tp,
                     int64_t x, int64_t y) {
  check_thm3(aniso, tp);
  EventOutcome out;
  if (!eval_A_impl(cfg, aniso, x, y, tp.W, tp.ell, &out.read)) return out;
  bool plus = false;
  for (int64_t i = 0; i <= tp.ell - 1 && !plus; ++i) {
    plus = eval_R3_impl(cfg, aniso, tp, x + i, y, +1, &out.read);
  }
  if (!plus) return out;
  for (int64_t i = tp.ell + 1; i <= 2 * tp.ell; ++i) {
    if (eval_R3_impl(cfg, aniso, tp, x + i, y, -1, &out.read)) {
      out.occurred = true;
      return out;
    }
  }
  return out;
}

std::vector<EdgeId> footprint_T3(const Thm3Params& tp, int64_t x, int64_t y) {
  std::vector<EdgeId> out;
  for (int64_t i = 0; i <= tp.W; ++i) {
    for (int64_t j = i + 1; j <= tp.W; ++j) {
      out.push_back(aniso_horizontal(x + i, y, j - i));
    }
  }
  for (int64_t i = 0; i <= tp.ell - 1; ++i) {
    const auto fp = footprint_R3(tp, x + i, y, +1);
    out.insert(out.end(), fp.begin(), fp.end());
  }
  for (int64_t i = tp.ell + 1; i <= 2 * tp.ell; ++i) {
    const auto fp = footprint_R3(tp, x + i, y, -1);
    out.insert(out.end(), fp.begin(), fp.end());
  }
  return out;
}

double t3_lower_bound(const Thm3Params& tp) {
  const double q = tp.delta * tp.delta * (1.0 - std::exp(-tp.eta));
  const double arm = 1.0 - std::pow(1.0 - q, static_cast<double>(tp.ell));
  return (1.0 - tp.epsilon / 3.0) * arm * arm;
}

namespace {

// BFS over open bonds of G^an inside a rows x columns window; marks every
// vertex reachable from the start set.
class WindowReach {
public:
  WindowReach(const ConfigSeed& cfg, const AnisoParams& aniso, int64_t col_lo, int64_t col_hi,
              int64_t row_lo, int64_t row_hi)
      : cfg_(cfg), aniso_(aniso), col_lo_(col_lo), col_hi_(col_hi), row_lo_(row_lo),
        row_hi_(row_hi), width_(static_cast<size_t>(col_hi - col_lo + 1)),
        visited_(width_ * static_cast<size_t>(row_hi - row_lo + 1), 0) {}

  void run(const std::vector<std::pair<int64_t, int64_t>>& start) {
    std::deque<std::pair<int64_t, int64_t>> queue;
    for (const auto& s : start) {
      if (mark(s.first, s.second)) queue.push_back(s);
    }
    while (!queue.empty()) {
      const auto [c, r] = queue.front();
      queue.pop_front();
      for (int64_t c2 = std::max(col_lo_, c - aniso_.K);
           c2 <= std::min(col_hi_, c + aniso_.K); ++c2) {
        if (c2 == c || seen(c2, r)) continue;
        if (aniso_.seq.eval(c2 > c ? c2 - c : c - c2) <= 0.0) continue;
        if (h_open(cfg_, aniso_, aniso_horizontal_between(c, c2, r), nullptr)) {
          mark(c2, r);
          queue.emplace_back(c2, r);
        }
      }
      if (r + 1 <= row_hi_ && !seen(c, r + 1) &&
          v_open(cfg_, aniso_, aniso_vertical(c, r), nullptr)) {
        mark(c, r + 1);
        queue.emplace_back(c, r + 1);
      }
      if (r - 1 >= row_lo_ && !seen(c, r - 1) &&
          v_open(cfg_, aniso_, aniso_vertical(c, r - 1), nullptr)) {
        mark(c, r - 1);
        queue.emplace_back(c, r - 1);
      }
    }
  }

  bool seen(int64_t c, int64_t r) const { return visited_[index(c, r)] != 0; }

private:
  size_t index(int64_t c, int64_t r) const {
    return static_cast<size_t>(r - row_lo_) * width_ + static_cast<size_t>(c - col_lo_);
  }
  bool mark(int64_t c, int64_t r) {
    if (visited_[index(c, r)]) return false;
    visited_[index(c, r)] = 1;
    return true;
  }

  ConfigSeed cfg_;
  const AnisoParams& aniso_;
  int64_t col_lo_, col_hi_, row_lo_, row_hi_;
  size_t width_;
  std::vector<uint8_t> visited_;
};

struct Site {
  int64_t v1 = 0;
  int64_t v2 = 0;
  int64_t anchor_x(const Thm3Params& tp) const { return tp.k * (v1 - v2); }
  int64_t anchor_y() const { return 2 * (v1 + v2); }
};

}  // namespace

Thm3Report red_site_explore(const ConfigSeed& cfg, const AnisoParams& aniso,
                            const Thm3Params& tp, int64_t height, bool verify) {
  check_thm3(aniso, tp);
  if (height < 1) throw ValidationError("height must be >= 1");
  Thm3Report rep;

  auto red = [&](const Site& s) {
    ++rep.sites_evaluated;
    return eval_T3(cfg, aniso, tp, s.anchor_x(tp), s.anchor_y()).occurred;
  };

  // alive[g][v1]: a red path from (0,0) ends at (v1, g-v1).
  std::vector<std::vector<uint8_t>> alive(static_cast<size_t>(height) + 1);
  alive[0] = {red(Site{0, 0}) ? uint8_t{1} : uint8_t{0}};
  for (int64_t g = 1; g <= height; ++g) {
    auto& layer = alive[static_cast<size_t>(g)];
    layer.assign(static_cast<size_t>(g) + 1, 0);
    const auto& prev = alive[static_cast<size_t>(g - 1)];
    for (int64_t v1 = 0; v1 <= g; ++v1) {
      const bool pred = (v1 >= 1 && prev[static_cast<size_t>(v1 - 1)]) ||
                        (v1 <= g - 1 && prev[static_cast<size_t>(v1)]);
      if (pred && red(Site{v1, g - v1})) layer[static_cast<size_t>(v1)] = 1;
    }
  }
  const auto& top = alive.back();
  int64_t top_v1 = -1;
  for (size_t i = 0; i < top.size(); ++i) {
    if (top[i]) {
      top_v1 = static_cast<int64_t>(i);
      break;
    }
  }
  rep.reached = top_v1 >= 0;
  if (!verify || !rep.reached) return rep;

  // One red path, reconstructed deterministically.
  std::vector<Site> path;
  Site cur{top_v1, height - top_v1};
  path.push_back(cur);
  for (int64_t g = height; g > 0; --g) {
    const auto& prev = alive[static_cast<size_t>(g - 1)];
    if (cur.v1 >= 1 && prev[static_cast<size_t>(cur.v1 - 1)]) {
      cur = Site{cur.v1 - 1, cur.v2};
    } else {
      cur = Site{cur.v1, cur.v2 - 1};
    }
    path.push_back(cur);
  }
  std::reverse(path.begin(), path.end());
  rep.path_sites = path.size();

  std::unordered_set<EdgeId, EdgeIdHash> seen;
  for (const Site& s : path) {
    for (const EdgeId& e : footprint_T3(tp, s.anchor_x(tp), s.anchor_y())) {
      ++rep.footprint_edges;
      if (!seen.insert(e).second) ++rep.footprint_violations;
    }
  }

  for (size_t i = 0; i + 1 < path.size(); ++i) {
    const Site& s = path[i];
    const Site& t = path[i + 1];
    const int64_t xs = s.anchor_x(tp);
    const int64_t xt = t.anchor_x(tp);
    const int64_t ys = s.anchor_y();
    const int64_t col_lo = std::min(xs, xt) - aniso.K;
    const int64_t col_hi = std::max(xs, xt) + tp.W + aniso.K;
    WindowReach reach(cfg, aniso, col_lo, col_hi, ys, ys + 2);
    std::vector<std::pair<int64_t, int64_t>> start;
    for (int64_t j = 0; j <= 2 * tp.ell; ++j) start.emplace_back(xs + j, ys);
    reach.run(start);
    ++rep.link_checks;
    for (int64_t j = 0; j <= 2 * tp.ell; ++j) {
      if (!reach.seen(xt + j, ys + 2)) {
        ++rep.link_failures;
        break;
      }
    }
  }
  return rep;
}

bool kw_connected(const ConfigSeed& cfg, const ProbSequence& seq, int64_t l, int64_t L) {
  if (l < 1 || L < l) throw ValidationError("need 1 <= l <= L");
  EdgeSampler sampler(cfg);
  UnionFind uf(static_cast<size_t>(L) + 1);
  std::vector<int64_t> markers(static_cast<size_t>(L) + 1, 0);
  for (int64_t i = 0; i <= l; ++i) markers[static_cast<size_t>(i)] = 1;
  // Short bonds first; stop once the l+1 markers share one component.
  for (int64_t len = 1; len <= L; ++len) {
    const double p = seq.eval(len);
    if (p <= 0.0) continue;
    for (int64_t i = 0; i + len <= L; ++i) {
      if (sampler.uniform(line_bond(i, i + len)) >= p) continue;
      const size_t ra = uf.find(static_cast<size_t>(i));
      const size_t rb = uf.find(static_cast<size_t>(i + len));
      if (ra == rb) continue;
      const size_t r = uf.merge(ra, rb);
      markers[r] = markers[ra] + markers[rb];
      if (markers[r] == l + 1) return true;
    }
  }
  return false;
}

EstimateResult kw_connect_prob(const ProbSequence& seq, int64_t l, int64_t L, uint64_t trials,
                               uint64_t master_seed) {
  if (l < 1 || L < l) throw ValidationError("need 1 <= l <= L");
  if (trials == 0) throw ValidationError("trials must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  const uint64_t successes = count_trials(trials, [&](uint64_t t) {
    return kw_connected(ConfigSeed{master_seed, t}, seq, l, L);
  });
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return make_estimate(successes, trials, master_seed, ms);
}

EstimateResult kesten_crossing(double pv, double ph, int64_t n, uint64_t trials,
                               uint64_t master_seed) {
  if (!(pv >= 0.0 && pv <= 1.0 && ph >= 0.0 && ph <= 1.0)) {
    throw ValidationError("pv and ph must lie in [0,1]");
  }
  if (n < 2) throw ValidationError("box side must be >= 2");
  if (trials == 0) throw ValidationError("trials must be >= 1");

  const size_t cells = static_cast<size_t>(n) * static_cast<size_t>(n);
  const size_t left = cells;
  const size_t right = cells + 1;
  const auto t0 = std::chrono::steady_clock::now();
  const uint64_t successes = count_trials(trials, [&](uint64_t t) {
    EdgeSampler sampler(ConfigSeed{master_seed, t});
    UnionFind uf(cells + 2);
    auto id = [n](int64_t i, int64_t j) {
      return static_cast<size_t>(j) * static_cast<size_t>(n) + static_cast<size_t>(i);
    };
    for (int64_t j = 0; j < n; ++j) {
      uf.merge(left, id(0, j));
      uf.merge(right, id(n - 1, j));
    }
    for (int64_t j = 0; j < n; ++j) {
      for (int64_t i = 0; i + 1 < n; ++i) {
        if (sampler.uniform(aniso_horizontal(i, j, 1)) < ph) uf.merge(id(i, j), id(i + 1, j));
      }
    }
    for (int64_t j = 0; j + 1 < n; ++j) {
      for (int64_t i = 0; i < n; ++i) {
        if (sampler.uniform(aniso_vertical(i, j)) < pv) uf.merge(id(i, j), id(i, j + 1));
      }
    }
    return uf.connected(left, right);
  });
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return make_estimate(successes, trials, master_seed, ms);
}

}  // namespace perctrunc
