#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "doctest.h"
#include "perctrunc/errors.hpp"
#include "perctrunc/sequence.hpp"

using namespace perctrunc;

namespace {

// Total of 1/k for k = 1..n, the closed form behind the remark-p cross sums.
double harmonic(int64_t n) {
  long double h = 0.0L;
  for (int64_t k = 1; k <= n; ++k) h += 1.0L / static_cast<long double>(k);
  return static_cast<double>(h);
}

std::vector<ProbSequence> sample_sequences() {
  return {ProbSequence::constant(0.5),
          ProbSequence::constant(1.0),
          ProbSequence::inverse_sqrt(),
          ProbSequence::power_law(0.7, 1.0),
          ProbSequence::remark_p(),
          ProbSequence::table({{3, 0.2}, {5, 0.1}}, TailRule::Zero),
          ProbSequence::table({{3, 0.2}, {5, 0.1}}, TailRule::Hold)};
}

}  // namespace

TEST_CASE("eval closed forms") {
  CHECK(ProbSequence::constant(0.5).eval(7) == doctest::Approx(0.5));
  CHECK(ProbSequence::inverse_sqrt().eval(4) == doctest::Approx(0.5));
  CHECK(ProbSequence::inverse_sqrt().eval(1) == doctest::Approx(1.0));
  CHECK(ProbSequence::power_law(0.7, 1.0).eval(7) == doctest::Approx(0.1));

  const auto rp = ProbSequence::remark_p();
  CHECK(rp.eval(3) == doctest::Approx(1.0));
  CHECK(rp.eval(4) == doctest::Approx(1.0));
  CHECK(rp.eval(5) == doctest::Approx(0.0));
  CHECK(rp.eval(9) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(rp.eval(10) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(rp.eval(1) == doctest::Approx(0.0));
  CHECK(rp.eval(2) == doctest::Approx(0.0));

  const auto rq = ProbSequence::remark_q();
  CHECK(rq.eval(10018) == doctest::Approx(0.5));   // 100^2 + 2*3^2
  CHECK(rq.eval(10009) == doctest::Approx(0.5));   // t = 1
  CHECK(rq.eval(10900) == doctest::Approx(0.5));   // t = 100
  CHECK(rq.eval(10000) == doctest::Approx(0.0));   // t = 0 not in the block
  CHECK(rq.eval(10909) == doctest::Approx(0.0));   // t = 101 past the block
  CHECK(rq.eval(1000027) == doctest::Approx(0.5 / std::sqrt(2.0)));  // k = 3, t = 1
  CHECK(rq.eval(3) == doctest::Approx(0.0));
}

TEST_CASE("eval rejects non-positive indices") {
  CHECK_THROWS_AS(ProbSequence::constant(0.5).eval(0), ValidationError);
  CHECK_THROWS_AS(ProbSequence::inverse_sqrt().eval(-3), ValidationError);
}

TEST_CASE("construction validation") {
  CHECK_THROWS_AS(ProbSequence::constant(1.5), ValidationError);
  CHECK_THROWS_AS(ProbSequence::power_law(1.2, 1.0), ValidationError);
  CHECK_THROWS_AS(ProbSequence::power_law(0.5, -1.0), ValidationError);
  CHECK_THROWS_AS(ProbSequence::table({{3, 0.2}, {3, 0.1}}, TailRule::Zero), ValidationError);
  CHECK_THROWS_AS(ProbSequence::table({{3, 1.2}}, TailRule::Zero), ValidationError);
}

TEST_CASE("table lookup and tails") {
  const auto zero = ProbSequence::table({{3, 0.2}, {5, 0.1}}, TailRule::Zero);
  CHECK(zero.eval(3) == doctest::Approx(0.2));
  CHECK(zero.eval(4) == doctest::Approx(0.0));
  CHECK(zero.eval(5) == doctest::Approx(0.1));
  CHECK(zero.eval(6) == doctest::Approx(0.0));
  const auto hold = ProbSequence::table({{3, 0.2}, {5, 0.1}}, TailRule::Hold);
  CHECK(hold.eval(6) == doctest::Approx(0.1));
  CHECK(hold.eval(1000) == doctest::Approx(0.1));
  CHECK(hold.eval(4) == doctest::Approx(0.0));
}

TEST_CASE("truncation") {
  const auto t = truncate(ProbSequence::inverse_sqrt(), 4);
  CHECK(t.eval(4) == doctest::Approx(0.5));
  CHECK(t.eval(5) == doctest::Approx(0.0));
  const auto one = truncate(ProbSequence::constant(1.0), 1);
  CHECK(one.eval(2) == doctest::Approx(0.0));
  CHECK_THROWS_AS(truncate(ProbSequence::constant(0.5), 0), ValidationError);
}

TEST_CASE("truncation idempotence and monotonicity") {
  for (const auto& s : sample_sequences()) {
    for (int64_t K = 1; K <= 8; K += 3) {
      const auto tK = truncate(s, K);
      const auto tKK = truncate(tK.base, K);  // same K twice
      const auto tK2 = truncate(s, 2 * K);
      for (int64_t n = 1; n <= 2 * K; ++n) {
        CHECK(tKK.eval(n) == tK.eval(n));
        CHECK(tK.eval(n) <= tK2.eval(n));
      }
    }
  }
}

TEST_CASE("partial sums") {
  CHECK(partial_sum(ProbSequence::constant(0.5), SumMode::Squares, 4) == doctest::Approx(1.0));
  CHECK(partial_sum(ProbSequence::inverse_sqrt(), SumMode::Plain, 1) == doctest::Approx(1.0));
  // Only n = 3^k contributes p_{3^k} p_{3^k+1} = 1/k; horizon 3^5+1 = 244.
  CHECK(partial_sum(ProbSequence::remark_p(), SumMode::Cross, 244, 1) ==
        doctest::Approx(harmonic(5)).epsilon(1e-12));
  CHECK_THROWS_AS(partial_sum(ProbSequence::constant(0.5), SumMode::Cross, 10, 0),
                  ValidationError);
  CHECK_THROWS_AS(partial_sum(ProbSequence::constant(0.5), SumMode::Plain, 0), ValidationError);
}

TEST_CASE("cross sum is dominated by half the square sums") {
  for (const auto& s : sample_sequences()) {
    for (int64_t N : {1, 2, 5}) {
      for (int64_t horizon : {10, 100, 500}) {
        const double cross = partial_sum(s, SumMode::Cross, horizon, N);
        long double shifted = 0.0L;
        for (int64_t n = 1; n <= horizon; ++n) {
          const long double p = s.eval(n + N);
          shifted += p * p;
        }
        const double bound =
            0.5 * (partial_sum(s, SumMode::Squares, horizon) + static_cast<double>(shifted));
        CHECK(cross <= bound + 1e-12);
      }
    }
  }
}

TEST_CASE("remark-p finite-horizon diagnostics") {
  const auto rp = ProbSequence::remark_p();
  // cross(1) partial sums keep growing: one fresh 1/k term per power of 3.
  double prev = 0.0;
  int64_t pow3 = 3;
  for (int k = 1; k <= 8; ++k) {
    const double cur = partial_sum(rp, SumMode::Cross, pow3, 1);
    CHECK(cur > prev);
    prev = cur;
    pow3 *= 3;
  }
  // For N=5 the only aligned pair is (4,9); the sum stabilizes immediately.
  const double at100 = partial_sum(rp, SumMode::Cross, 100, 5);
  const double at1e5 = partial_sum(rp, SumMode::Cross, 100000, 5);
  CHECK(at100 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(at100 == doctest::Approx(at1e5).epsilon(1e-12));
}

TEST_CASE("support scans") {
  const auto tab = ProbSequence::table({{3, 0.2}, {5, 0.1}}, TailRule::Zero);
  CHECK(support_min(tab, 10) == 3);
  CHECK(support_min(ProbSequence::remark_p(), 10) == 3);
  CHECK_FALSE(support_min(ProbSequence::table({{3, 0.0}}, TailRule::Zero), 10).has_value());
  CHECK_FALSE(support_min(ProbSequence::constant(0.0), 10).has_value());

  CHECK(support_gcd(ProbSequence::table({{3, 0.2}, {6, 0.1}, {9, 0.4}}, TailRule::Zero), 20) ==
        3);
  CHECK(support_gcd(ProbSequence::inverse_sqrt(), 5) == 1);
  CHECK(support_gcd(ProbSequence::remark_p(), 10) == 1);
  CHECK_FALSE(support_gcd(ProbSequence::constant(0.0), 10).has_value());
}

TEST_CASE("sequence spec grammar") {
  CHECK(parse_sequence_spec("const:p=0.5").eval(9) == doctest::Approx(0.5));
  CHECK(parse_sequence_spec("powlaw:c=1,alpha=0.5").eval(4) == doctest::Approx(0.5));
  CHECK(parse_sequence_spec("invsqrt").eval(9) == doctest::Approx(1.0 / 3.0));
  CHECK(parse_sequence_spec("remark-p").eval(10) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(parse_sequence_spec("remark-q").eval(10018) == doctest::Approx(0.5));
  CHECK(parse_sequence_spec("invsqrt").spec_string() == "invsqrt");

  CHECK_THROWS_AS(parse_sequence_spec("const:p=1.5"), ValidationError);
  CHECK_THROWS_AS(parse_sequence_spec("powlaw:c=1.2,alpha=1"), ValidationError);
  CHECK_THROWS_AS(parse_sequence_spec("mystery"), ValidationError);
  CHECK_THROWS_AS(parse_sequence_spec("powlaw:c=zzz,alpha=1"), ValidationError);
}

TEST_CASE("table CSV round trip") {
  const std::string path = "perctrunc_test_table.csv";
  {
    std::ofstream out(path);
    out << "n,p\n3,0.2\n5,0.1\n";
  }
  const auto seq = parse_sequence_spec("table:" + path + ",tail=hold");
  CHECK(seq.eval(3) == doctest::Approx(0.2));
  CHECK(seq.eval(7) == doctest::Approx(0.1));
  const auto z = parse_sequence_spec("table:" + path + ",tail=zero");
  CHECK(z.eval(7) == doctest::Approx(0.0));
  CHECK_THROWS_AS(parse_sequence_spec("table:" + path + ",tail=maybe"), ValidationError);
  CHECK_THROWS_AS(parse_sequence_spec("table:no_such_file.csv,tail=zero"), IoError);
  std::remove(path.c_str());
}

TEST_CASE("eval stays in [0,1] across kinds") {
  std::mt19937_64 rng(7);
  for (const auto& s : sample_sequences()) {
    for (int rep = 0; rep < 200; ++rep) {
      const int64_t n = 1 + static_cast<int64_t>(rng() % 100000);
      const double p = s.eval(n);
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
    }
  }
}
