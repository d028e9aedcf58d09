#include "perctrunc/edge.hpp"

#include <bit>
#include <sstream>

#include "perctrunc/errors.hpp"
#include "perctrunc/rng.hpp"

namespace perctrunc {

bool is_canonical(const EdgeId& e) {
  switch (e.model) {
    case EdgeModel::Oriented:
      return e.dim >= 1 && e.dim <= kMaxOrientedDim && e.axis >= 1 && e.axis <= e.dim &&
             e.step != 0 && e.coord[e.dim] >= 0;
    case EdgeModel::AnisoH:
      return e.step >= 1;
    case EdgeModel::AnisoV:
      return e.step == 1;
    case EdgeModel::Line1d:
      return e.step >= 1 && e.coord[0] >= 0;
  }
  return false;
}

int64_t bond_length(const EdgeId& e) {
  switch (e.model) {
    case EdgeModel::Oriented:
      return e.step >= 0 ? e.step : -e.step;
    case EdgeModel::AnisoV:
      return 1;
    default:
      return e.step;
  }
}

EdgeId oriented_edge(std::span<const int64_t> x, int64_t m, int axis, int64_t step) {
  if (x.empty() || x.size() > kMaxOrientedDim) {
    throw ValidationError("oriented dimension must be in [1," + std::to_string(kMaxOrientedDim) + "]");
  }
  EdgeId e;
  e.model = EdgeModel::Oriented;
  e.dim = static_cast<uint8_t>(x.size());
  e.axis = static_cast<uint8_t>(axis);
  e.step = step;
  for (size_t i = 0; i < x.size(); ++i) e.coord[i] = x[i];
  e.coord[e.dim] = m;
  if (!is_canonical(e)) throw ValidationError("invalid oriented edge: " + describe(e));
  return e;
}

EdgeId oriented_edge1(int64_t x, int64_t m, int64_t step) {
  const int64_t xs[1] = {x};
  return oriented_edge(xs, m, 1, step);
}

EdgeId aniso_horizontal(int64_t x, int64_t y, int64_t len) {
  EdgeId e;
  e.model = EdgeModel::AnisoH;
  e.dim = 0;
  e.axis = 0;
  e.step = len;
  e.coord[0] = x;
  e.coord[1] = y;
  if (!is_canonical(e)) throw ValidationError("invalid horizontal bond: " + describe(e));
  return e;
}

EdgeId aniso_horizontal_between(int64_t x1, int64_t x2, int64_t y) {
  if (x1 == x2) throw ValidationError("horizontal bond endpoints coincide");
  return x1 < x2 ? aniso_horizontal(x1, y, x2 - x1) : aniso_horizontal(x2, y, x1 - x2);
}

EdgeId aniso_vertical(int64_t x, int64_t y) {
  EdgeId e;
  e.model = EdgeModel::AnisoV;
  e.dim = 0;
  e.axis = 0;
  e.step = 1;
  e.coord[0] = x;
  e.coord[1] = y;
  return e;
}

EdgeId line_bond(int64_t i, int64_t j) {
  if (i == j) throw ValidationError("line bond endpoints coincide");
  if (i > j) std::swap(i, j);
  EdgeId e;
  e.model = EdgeModel::Line1d;
  e.dim = 0;
  e.axis = 0;
  e.step = j - i;
  e.coord[0] = i;
  if (!is_canonical(e)) throw ValidationError("invalid line bond: " + describe(e));
  return e;
}

size_t encode_words(const EdgeId& e, std::array<uint64_t, 9>& out) {
  out[0] = static_cast<uint64_t>(kEdgeEncodingVersion) |
           (static_cast<uint64_t>(e.model) << 8) | (static_cast<uint64_t>(e.dim) << 16) |
           (static_cast<uint64_t>(e.axis) << 24);
  out[1] = std::bit_cast<uint64_t>(e.step);
  size_t n = 2;
  switch (e.model) {
    case EdgeModel::Oriented:
      for (int i = 0; i <= e.dim; ++i) out[n++] = std::bit_cast<uint64_t>(e.coord[i]);
      break;
    case EdgeModel::AnisoH:
    case EdgeModel::AnisoV:
      out[n++] = std::bit_cast<uint64_t>(e.coord[0]);
      out[n++] = std::bit_cast<uint64_t>(e.coord[1]);
      break;
    case EdgeModel::Line1d:
      out[n++] = std::bit_cast<uint64_t>(e.coord[0]);
      break;
  }
  return n;
}

std::string describe(const EdgeId& e) {
  std::ostringstream os;
  switch (e.model) {
    case EdgeModel::Oriented: {
      os << "oriented<(";
      for (int i = 0; i < e.dim; ++i) os << (i ? "," : "") << e.coord[i];
      os << ")," << e.coord[e.dim] << "> axis=" << int(e.axis) << " step=" << e.step;
      break;
    }
    case EdgeModel::AnisoH:
      os << "aniso-h{(" << e.coord[0] << "," << e.coord[1] << "),(" << e.coord[0] + e.step
         << "," << e.coord[1] << ")}";
      break;
    case EdgeModel::AnisoV:
      os << "aniso-v{(" << e.coord[0] << "," << e.coord[1] << "),(" << e.coord[0] << ","
         << e.coord[1] + 1 << ")}";
      break;
    case EdgeModel::Line1d:
      os << "line{" << e.coord[0] << "," << e.coord[0] + e.step << "}";
      break;
  }
  return os.str();
}

size_t EdgeIdHash::operator()(const EdgeId& e) const {
  std::array<uint64_t, 9> w;
  const size_t n = encode_words(e, w);
  return static_cast<size_t>(chain_words(0x5eedf00d, {w.data(), n}));
}

}  // namespace perctrunc
