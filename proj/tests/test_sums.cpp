#include <doctest.h>

#include <cmath>
#include <random>

#include "nilex/ergodic_sums.hpp"

using namespace nilex;

namespace {

const QPhi phi = QPhi::phi();

// Independent floating oracle: compensated summation in long double.
long double kahan_sum(long double x0, long n) {
  const long double alpha = 2.0L - (1.0L + std::sqrt(5.0L)) / 2.0L;
  long double s = 0, c = 0;
  for (long k = 0; k <= n; ++k) {
    long double v = x0 + static_cast<long double>(k) * alpha;
    v -= std::floor(v);
    const long double y = (v - 0.5L) - c;
    const long double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

}  // namespace

TEST_SUITE("ergodic_sums") {
  TEST_CASE("first terms") {
    CHECK(birkhoff_sum(QPhi(), 0) == QPhi(Rational(-1, 2)));
    CHECK(birkhoff_sum(QPhi(), 1) == QPhi(1) - phi);
    BirkhoffWalker w{QPhi()};
    w.advance();
    CHECK(w.index() == 1);
    CHECK(w.frac() == QPhi(2) - phi);
    CHECK(w.sum() == QPhi(1) - phi);
  }

  TEST_CASE("incremental and direct sums agree") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> nd(0, 10'000), cd(0, 990);
    for (int i = 0; i < 100; ++i) {
      const QPhi x0(Rational(cd(rng), 997), Rational(cd(rng), 991));
      const long n = nd(rng);
      CHECK(birkhoff_sum(x0, n) == birkhoff_sum_direct(x0, n));
    }
  }

  TEST_CASE("long sum against a floating oracle") {
    const long n = 1'000'000;
    const QPhi s = birkhoff_sum(QPhi(), n);
    CHECK(std::fabs(to_double(s) - static_cast<double>(kahan_sum(0.0L, n))) < 1e-6);
    const QPhi x0(Rational(1, 3));
    CHECK(std::fabs(to_double(birkhoff_sum(x0, n)) - static_cast<double>(kahan_sum(1.0L / 3, n))) < 1e-6);
  }

  TEST_CASE("drifted form differs by a constant") {
    const QPhi expected = QPhi(Rational(3, 2)) - phi;
    CHECK(expected == QPhi(Rational(1, 2)) - QPhi(1) / phi);
    for (long n : {0L, 1L, 7L, 100L, 5'000L}) {
      CHECK(drift_form_difference(QPhi(), n) == expected);
      CHECK(drift_form_difference(QPhi(Rational(2, 5), Rational(1, 9)), n) == expected);
    }
  }

  TEST_CASE("records and running maxima") {
    const auto rec = record_maxima(QPhi(), 1'000);
    REQUIRE(!rec.empty());
    CHECK(rec.front().n == 0);
    for (std::size_t i = 1; i < rec.size(); ++i) {
      CHECK(rec[i].n > rec[i - 1].n);
      CHECK(abs(rec[i].value) > abs(rec[i - 1].value));
    }
    const std::vector<long> cps = {100, 1'000, 10'000, 100'000, 1'000'000};
    const double frozen[] = {1.010697, 1.210578, 1.510556, 1.710557, 2.010557};
    const auto m = running_maxima(QPhi(), cps);
    REQUIRE(m.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(to_double(m[i]) == doctest::Approx(frozen[i]).epsilon(1e-6));
      if (i) CHECK(m[i] > m[i - 1]);
    }
    // Logarithmic growth: roughly 0.3 per decade.
    CHECK(to_double(m[4]) < 0.5 * std::log10(1e6));
  }

  TEST_CASE("csv") {
    const std::string csv = sums_csv(QPhi(), 2);
    CHECK(csv.rfind("n,S_n,is_record\n0,-0.500000000000,1\n1,-0.618033988750,1\n", 0) == 0);
  }
}
