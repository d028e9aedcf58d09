#include "perctrunc/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "perctrunc/errors.hpp"

namespace perctrunc {

namespace {

void require_prob(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError(std::string(what) + " must lie in [0,1]");
  }
}

std::string format_num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

ProbSequence ProbSequence::constant(double p) {
  require_prob(p, "constant p");
  ProbSequence s;
  s.kind_ = SeqKind::Constant;
  s.a_ = p;
  s.spec_ = "const:p=" + format_num(p);
  return s;
}

ProbSequence ProbSequence::power_law(double c, double alpha) {
  require_prob(c, "power-law c");
  if (alpha < 0.0) throw ValidationError("power-law alpha must be >= 0");
  ProbSequence s;
  s.kind_ = SeqKind::PowerLaw;
  s.a_ = c;
  s.b_ = alpha;
  s.spec_ = "powlaw:c=" + format_num(c) + ",alpha=" + format_num(alpha);
  return s;
}

ProbSequence ProbSequence::inverse_sqrt() {
  ProbSequence s;
  s.kind_ = SeqKind::InverseSqrt;
  s.spec_ = "invsqrt";
  return s;
}

ProbSequence ProbSequence::remark_p() {
  ProbSequence s;
  s.kind_ = SeqKind::IndicatorP;
  s.spec_ = "remark-p";
  return s;
}

ProbSequence ProbSequence::remark_q() {
  ProbSequence s;
  s.kind_ = SeqKind::IndicatorQ;
  s.spec_ = "remark-q";
  return s;
}

ProbSequence ProbSequence::table(std::vector<std::pair<int64_t, double>> rows, TailRule tail) {
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].first < 1) throw ValidationError("table indices must be >= 1");
    if (i > 0 && rows[i].first <= rows[i - 1].first) {
      throw ValidationError("table indices must be strictly increasing");
    }
    require_prob(rows[i].second, "table value");
  }
  ProbSequence s;
  s.kind_ = SeqKind::Table;
  s.rows_ = std::move(rows);
  s.tail_ = tail;
  s.spec_ = std::string("table:<inline>,tail=") + (tail == TailRule::Zero ? "zero" : "hold");
  return s;
}

double ProbSequence::eval(int64_t n) const {
  if (n < 1) throw ValidationError("sequence index n must be >= 1");
  switch (kind_) {
    case SeqKind::Constant:
      return a_;
    case SeqKind::PowerLaw:
      return a_ * std::pow(static_cast<double>(n), -b_);
    case SeqKind::InverseSqrt:
      return 1.0 / std::sqrt(static_cast<double>(n));
    case SeqKind::IndicatorP: {
      int64_t pow3 = 3;
      for (int64_t k = 1;; ++k) {
        if (n == pow3 || n == pow3 + 1) return 1.0 / std::sqrt(static_cast<double>(k));
        if (pow3 > n || pow3 > std::numeric_limits<int64_t>::max() / 3) return 0.0;
        pow3 *= 3;
      }
    }
    case SeqKind::IndicatorQ: {
      // Blocks start at k=2: the k=1 weight 1/(2 sqrt(k-1)) is singular.
      int64_t pow100 = 100 * 100;
      int64_t pow3 = 9;
      for (int64_t k = 2;; ++k) {
        if (n >= pow100 + pow3) {
          const int64_t r = n - pow100;
          if (r % pow3 == 0 && r / pow3 <= 100) {
            return 0.5 / std::sqrt(static_cast<double>(k - 1));
          }
        }
        if (pow100 > n || pow100 > std::numeric_limits<int64_t>::max() / 100) return 0.0;
        pow100 *= 100;
        pow3 *= 3;
      }
    }
    case SeqKind::Table: {
      auto it = std::lower_bound(rows_.begin(), rows_.end(), n,
                                 [](const auto& row, int64_t v) { return row.first < v; });
      if (it != rows_.end() && it->first == n) return it->second;
      if (it == rows_.end() && !rows_.empty() && tail_ == TailRule::Hold) {
        return rows_.back().second;
      }
      return 0.0;
    }
  }
  return 0.0;
}

double TruncatedSequence::eval(int64_t n) const {
  if (n < 1) throw ValidationError("sequence index n must be >= 1");
  return n <= K ? base.eval(n) : 0.0;
}

TruncatedSequence truncate(const ProbSequence& seq, int64_t K) {
  if (K < 1) throw ValidationError("truncation range K must be >= 1");
  return TruncatedSequence{seq, K};
}

double partial_sum(const ProbSequence& seq, SumMode mode, int64_t horizon,
                   int64_t cross_shift) {
  if (horizon < 1) throw ValidationError("horizon must be >= 1");
  if (mode == SumMode::Cross && cross_shift < 1) {
    throw ValidationError("cross mode requires shift N >= 1");
  }
  long double acc = 0.0L;
  for (int64_t n = 1; n <= horizon; ++n) {
    const double p = seq.eval(n);
    switch (mode) {
      case SumMode::Plain:
        acc += p;
        break;
      case SumMode::Squares:
        acc += static_cast<long double>(p) * p;
        break;
      case SumMode::Cross:
        if (p > 0.0) acc += static_cast<long double>(p) * seq.eval(n + cross_shift);
        break;
    }
  }
  return static_cast<double>(acc);
}

std::optional<int64_t> support_min(const ProbSequence& seq, int64_t horizon) {
  if (horizon < 1) throw ValidationError("horizon must be >= 1");
  for (int64_t n = 1; n <= horizon; ++n) {
    if (seq.eval(n) > 0.0) return n;
  }
  return std::nullopt;
}

std::optional<int64_t> support_gcd(const ProbSequence& seq, int64_t horizon) {
  if (horizon < 1) throw ValidationError("horizon must be >= 1");
  int64_t g = 0;
  for (int64_t n = 1; n <= horizon; ++n) {
    if (seq.eval(n) > 0.0) {
      g = std::gcd(g, n);
      if (g == 1) return 1;
    }
  }
  if (g == 0) return std::nullopt;
  return g;
}

std::vector<std::pair<int64_t, double>> load_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open table file: " + path);
  std::vector<std::pair<int64_t, double>> rows;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    int64_t n;
    double p;
    if (!(ls >> n >> p)) {
      if (lineno == 1) continue;  // header row
      throw ValidationError("malformed table row at line " + std::to_string(lineno));
    }
    rows.emplace_back(n, p);
  }
  return rows;
}

namespace {

std::vector<std::pair<std::string, std::string>> parse_kv(const std::string& args) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream ss(args);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ValidationError("expected key=value in sequence spec: " + item);
    out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
  }
  return out;
}

double parse_double(const std::string& s) {
  size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ValidationError("not a number in sequence spec: " + s);
  }
  if (pos != s.size()) throw ValidationError("not a number in sequence spec: " + s);
  return v;
}

}  // namespace

ProbSequence parse_sequence_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);

  if (head == "invsqrt") return ProbSequence::inverse_sqrt();
  if (head == "remark-p") return ProbSequence::remark_p();
  if (head == "remark-q") return ProbSequence::remark_q();
  if (head == "const") {
    for (const auto& [k, v] : parse_kv(args)) {
      if (k == "p") return ProbSequence::constant(parse_double(v));
    }
    throw ValidationError("const sequence needs p=<value>");
  }
  if (head == "powlaw") {
    double c = std::numeric_limits<double>::quiet_NaN();
    double alpha = std::numeric_limits<double>::quiet_NaN();
    for (const auto& [k, v] : parse_kv(args)) {
      if (k == "c") c = parse_double(v);
      else if (k == "alpha") alpha = parse_double(v);
      else throw ValidationError("unknown powlaw parameter: " + k);
    }
    if (std::isnan(c) || std::isnan(alpha)) {
      throw ValidationError("powlaw sequence needs c=<value>,alpha=<value>");
    }
    return ProbSequence::power_law(c, alpha);
  }
  if (head == "table") {
    // table:<path>[,tail=zero|hold]
    std::string path = args;
    TailRule tail = TailRule::Zero;
    const auto comma = args.rfind(",tail=");
    if (comma != std::string::npos) {
      path = args.substr(0, comma);
      const std::string t = args.substr(comma + 6);
      if (t == "zero") tail = TailRule::Zero;
      else if (t == "hold") tail = TailRule::Hold;
      else throw ValidationError("table tail must be zero or hold");
    }
    if (path.empty()) throw ValidationError("table sequence needs a CSV path");
    return ProbSequence::table(load_table_csv(path), tail);
  }
  throw ValidationError("unknown sequence spec: " + spec);
}

}  // namespace perctrunc
