#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace perctrunc {

enum class SeqKind { Constant, PowerLaw, InverseSqrt, IndicatorP, IndicatorQ, Table };

enum class TailRule { Zero, Hold };

// A parameter sequence (p_n)_{n>=1} with values in [0,1]. Immutable after
// construction; closed forms are evaluated on demand, tabulated sequences
// carry an explicit tail rule.
class ProbSequence {
public:
  static ProbSequence constant(double p);
  static ProbSequence power_law(double c, double alpha);
  static ProbSequence inverse_sqrt();
  static ProbSequence remark_p();  // k^{-1/2} at n = 3^k and 3^k+1, else 0
  static ProbSequence remark_q();  // 1/(2 sqrt(k-1)) at n = 100^k + t*3^k, t=1..100, k>=2
  static ProbSequence table(std::vector<std::pair<int64_t, double>> rows, TailRule tail);

  // p_n; n >= 1 required.
  double eval(int64_t n) const;

  SeqKind kind() const { return kind_; }
  const std::string& spec_string() const { return spec_; }

private:
  ProbSequence() = default;
  SeqKind kind_ = SeqKind::Constant;
  double a_ = 0.0;  // constant p / power-law c
  double b_ = 0.0;  // power-law alpha
  std::vector<std::pair<int64_t, double>> rows_;
  TailRule tail_ = TailRule::Zero;
  std::string spec_;
};

// (p_n 1{n<=K})_n; the sequence the truncated measure is built from.
struct TruncatedSequence {
  ProbSequence base;
  int64_t K = 1;
  double eval(int64_t n) const;
};

TruncatedSequence truncate(const ProbSequence& seq, int64_t K);

enum class SumMode { Plain, Squares, Cross };

// Sum_{n=1}^{horizon} of p_n, p_n^2, or p_n * p_{n+shift}.
double partial_sum(const ProbSequence& seq, SumMode mode, int64_t horizon,
                   int64_t cross_shift = 0);

// Smallest n <= horizon with p_n > 0, if any.
std::optional<int64_t> support_min(const ProbSequence& seq, int64_t horizon);

// gcd of {n <= horizon : p_n > 0}. A finite-horizon gcd certifies the infinite
// support gcd only when it equals 1.
std::optional<int64_t> support_gcd(const ProbSequence& seq, int64_t horizon);

// Mini-grammar: const:p=0.5 | powlaw:c=1,alpha=0.5 | invsqrt | remark-p |
// remark-q | table:<path>,tail=zero|hold (two-column CSV "n,p").
ProbSequence parse_sequence_spec(const std::string& spec);

std::vector<std::pair<int64_t, double>> load_table_csv(const std::string& path);

}  // namespace perctrunc
