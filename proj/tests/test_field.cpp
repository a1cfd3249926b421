#include <doctest.h>

#include <random>

#include "nilex/qphi.hpp"

using namespace nilex;

namespace {

const QPhi phi = QPhi::phi();

QPhi q(long a, long b = 0) { return QPhi(Rational(a), Rational(b)); }

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-1'000'000, 1'000'000), den(1, 1'000'000);
  return Rational(num(rng), den(rng));
}

}  // namespace

TEST_SUITE("exact_field") {
  TEST_CASE("rational normal form") {
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(6, -4).denominator() == 2);
    CHECK(Rational(0, 7) == Rational());
    CHECK(Rational(0, 7).denominator() == 1);
    CHECK_THROWS_AS(Rational(1, 0), DivisionByZero);
    CHECK_THROWS_AS(Rational(1) / Rational(), DivisionByZero);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(7, 2).str() == "7/2");
  }

  TEST_CASE("rational overflow moves to big integers and back") {
    const Rational big(Integer("123456789012345678901234567890"), Integer(1));
    const Rational x = big * big;
    CHECK_FALSE(x.is_small());
    CHECK((x / big) == big);
    CHECK((x / x) == Rational(1));
    CHECK((x / x).is_small());
    Rational m(std::numeric_limits<long>::max());
    m += Rational(1);
    CHECK(m - Rational(1) == Rational(std::numeric_limits<long>::max()));
  }

  TEST_CASE("arithmetic examples") {
    CHECK(phi * phi == q(1, 1));
    CHECK((QPhi(2) - phi) * (QPhi(1) + phi) == QPhi(1));
    CHECK(QPhi(1) / phi == q(-1, 1));
    CHECK(-phi == q(0, -1));
    CHECK_THROWS_AS(QPhi(1) / QPhi(0), DivisionByZero);
  }

  TEST_CASE("sign examples") {
    CHECK(sign(QPhi(0)) == 0);
    CHECK(sign(q(-3, 2)) == 1);
    CHECK(sign(q(5, -3)) == 1);
    CHECK(sign(q(3, -2)) == -1);
    CHECK(sign(QPhi(Rational(-1, 3))) == -1);
    // Convergent differences alternate in sign.
    for (long k = 2; k < 80; ++k) {
      const QPhi d(Rational(fibonacci(k + 1), Integer(1)), Rational(-fibonacci(k), Integer(1)));
      CHECK(sign(d) == (k % 2 == 0 ? 1 : -1));
    }
  }

  TEST_CASE("floor_frac examples") {
    auto f = floor_frac(phi);
    CHECK(f.floor == 1);
    CHECK(f.frac == q(-1, 1));
    f = floor_frac(q(0, 2));
    CHECK(f.floor == 3);
    CHECK(f.frac == q(-3, 2));
    f = floor_frac(-phi);
    CHECK(f.floor == -2);
    CHECK(f.frac == q(2, -1));
    f = floor_frac(QPhi(Rational(-7, 2)));
    CHECK(f.floor == -4);
    CHECK(f.frac == QPhi(Rational(1, 2)));
    f = floor_frac(QPhi(3));
    CHECK(f.floor == 3);
    CHECK(f.frac.is_zero());
  }

  TEST_CASE("phi powers") {
    CHECK(phi_power(3) == q(1, 2));
    CHECK(phi_power(-2) == q(2, -1));
    CHECK(phi_power(-3) == q(-3, 2));
    CHECK(phi_power(0) == QPhi(1));
    for (long j = -20; j <= 20; ++j) {
      for (long k = -20; k <= 20; ++k) CHECK(phi_power(j) * phi_power(k) == phi_power(j + k));
    }
    CHECK(fibonacci(-5) == 5);
    CHECK(fibonacci(-6) == -8);
  }

  TEST_CASE("field properties on random values") {
    std::mt19937_64 rng(7);
    int bad = 0;
    for (int i = 0; i < 10'000; ++i) {
      const QPhi x(random_rational(rng), random_rational(rng));
      const QPhi y(random_rational(rng), random_rational(rng));
      const QPhi z(random_rational(rng), random_rational(rng));
      bool ok = (x + y) + z == x + (y + z) && x * (y + z) == x * y + x * z && (x * y) * z == x * (y * z);
      if (!x.is_zero()) ok = ok && x * (QPhi(1) / x) == QPhi(1);
      // Order against a 200-bit embedding.
      const mpf_class d = to_mpf(x, 200) - to_mpf(y, 200);
      ok = ok && sign(x - y) == sgn(d) && (x > y) == (sgn(d) > 0);
      const FloorFrac ff = floor_frac(x);
      ok = ok && sign(ff.frac) >= 0 && ff.frac < QPhi(1) && QPhi(Rational(ff.floor)) + ff.frac == x;
      bad += !ok;
    }
    CHECK(bad == 0);
  }

  TEST_CASE("serialization") {
    const QPhi x(Rational(-3, 4), Rational(5, 7));
    const auto s = to_strings(x);
    CHECK(s[0] == "-3");
    CHECK(s[1] == "4");
    CHECK(s[2] == "5");
    CHECK(s[3] == "7");
    CHECK(from_strings(s) == x);
    CHECK_THROWS_AS(from_strings({"1", "x", "0", "1"}), std::invalid_argument);
    CHECK(to_string(q(2, -1)) == "2-phi");
    CHECK(to_decimal(phi, 12) == "1.618033988750");
  }

  TEST_CASE("parse_qphi") {
    CHECK(parse_qphi("2-phi") == q(2, -1));
    CHECK(parse_qphi("2phi-3") == q(-3, 2));
    CHECK(parse_qphi("-3 + 2*phi") == q(-3, 2));
    CHECK(parse_qphi("1/3+phi/7") == QPhi(Rational(1, 3), Rational(1, 7)));
    CHECK(parse_qphi("0") == QPhi(0));
    const QPhi x(Rational(-5, 8), Rational(3, 11));
    CHECK(parse_qphi(to_string(x)) == x);
    CHECK_THROWS_AS(parse_qphi(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_qphi("2x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_qphi("1/0"), std::invalid_argument);
  }

  TEST_CASE("certified approximations enclose the value") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
      const QPhi x(random_rational(rng), random_rational(rng));
      const QPhi y(random_rational(rng), random_rational(rng));
      const Approx p = approx(x) * approx(y) + approx(x) - approx(y);
      const double v = to_double(x * y + x - y);
      CHECK(p.lo() <= v);
      CHECK(v <= p.hi());
    }
  }
}
