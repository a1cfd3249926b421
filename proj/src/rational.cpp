#include "nilex/rational.hpp"

#include <climits>
#include <limits>
#include <numeric>
#include <ostream>

namespace nilex {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMin64 = std::numeric_limits<std::int64_t>::min();
constexpr i128 kMax64 = std::numeric_limits<std::int64_t>::max();

// Both bounds exclude INT64_MIN so that negation never overflows.
bool fits(i128 v) { return v > kMin64 && v <= kMax64; }

std::uint64_t uabs(std::int64_t v) {
  return v < 0 ? std::uint64_t(0) - std::uint64_t(v) : std::uint64_t(v);
}

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

// gcd(|v|, m) with m > 0 a 64-bit modulus.
std::uint64_t gcd128(i128 v, std::uint64_t m) {
  const u128 av = v < 0 ? u128(0) - u128(v) : u128(v);
  return gcd64(static_cast<std::uint64_t>(av % m), m);
}

mpz_class to_mpz(i128 v) {
  const bool neg = v < 0;
  u128 a = neg ? u128(0) - u128(v) : u128(v);
  const std::uint64_t words[2] = {static_cast<std::uint64_t>(a),
                                  static_cast<std::uint64_t>(a >> 64)};
  mpz_class z;
  mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
  if (neg) z = -z;
  return z;
}

bool mpz_fits_int64(const mpz_class& z) {
  static_assert(sizeof(long) == sizeof(std::int64_t));
  return mpz_fits_slong_p(z.get_mpz_t()) && mpz_cmp_si(z.get_mpz_t(), LONG_MIN) != 0;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw DivisionByZero();
  i128 n = num, d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::uint64_t g = gcd128(n, static_cast<std::uint64_t>(d));
  n /= g;
  d /= g;
  if (fits(n) && fits(d)) {
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
  } else {
    set_big(mpq_class(to_mpz(n), to_mpz(d)));
  }
}

Rational::Rational(const Integer& num, const Integer& den) {
  if (sgn(den) == 0) throw DivisionByZero();
  mpq_class q(num, den);
  q.canonicalize();
  set_big(std::move(q));
}

Rational::Rational(const Integer& v) { set_big(mpq_class(v)); }

Rational::Rational(const mpq_class& v) {
  mpq_class q(v);
  q.canonicalize();
  set_big(std::move(q));
}

void Rational::set_big(mpq_class v) {
  big_ = std::make_unique<mpq_class>(std::move(v));
  normalize_big();
}

void Rational::normalize_big() {
  if (big_ && mpz_fits_int64(big_->get_num()) && mpz_fits_int64(big_->get_den())) {
    num_ = big_->get_num().get_si();
    den_ = big_->get_den().get_si();
    big_.reset();
  }
}

Integer Rational::numerator() const { return big_ ? Integer(big_->get_num()) : Integer(static_cast<long>(num_)); }
Integer Rational::denominator() const { return big_ ? Integer(big_->get_den()) : Integer(static_cast<long>(den_)); }

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q;
  mpq_set_si(q.get_mpq_t(), static_cast<long>(num_), static_cast<unsigned long>(den_));
  return q;
}

double Rational::to_double() const {
  if (!big_) return static_cast<double>(num_) / static_cast<double>(den_);
  return big_->get_d();
}

std::string Rational::str() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

void Rational::negate() {
  if (big_) {
    mpq_neg(big_->get_mpq_t(), big_->get_mpq_t());
  } else {
    num_ = -num_;
  }
}

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (den_ == o.den_) {
      const i128 n = i128(num_) + o.num_;
      const std::uint64_t g = gcd128(n, static_cast<std::uint64_t>(den_));
      const i128 rn = n / g, rd = i128(den_) / g;
      if (fits(rn)) {
        num_ = static_cast<std::int64_t>(rn);
        den_ = static_cast<std::int64_t>(rd);
        return *this;
      }
    } else {
      const std::uint64_t g = gcd64(static_cast<std::uint64_t>(den_), static_cast<std::uint64_t>(o.den_));
      const i128 d1 = den_ / static_cast<std::int64_t>(g), d2 = o.den_ / static_cast<std::int64_t>(g);
      const i128 n = i128(num_) * d2 + i128(o.num_) * d1;
      // Knuth: gcd(n, d1*d2*g) == gcd(n, g) because gcd(n, d1) = gcd(n, d2) = 1.
      const std::uint64_t g2 = gcd128(n, g);
      const i128 rn = n / g2;
      const i128 rd = (d1 * o.den_) / g2;
      if (fits(rn) && fits(rd)) {
        num_ = static_cast<std::int64_t>(rn);
        den_ = static_cast<std::int64_t>(rd);
        return *this;
      }
    }
  }
  mpq_class r = to_mpq() + o.to_mpq();
  set_big(std::move(r));
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  if (this == &o) {
    *this = Rational();
    return *this;
  }
  negate();
  *this += o;
  negate();
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (num_ == 0 || o.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    const std::uint64_t g1 = gcd64(uabs(num_), static_cast<std::uint64_t>(o.den_));
    const std::uint64_t g2 = gcd64(uabs(o.num_), static_cast<std::uint64_t>(den_));
    const i128 n = i128(num_ / static_cast<std::int64_t>(g1)) * (o.num_ / static_cast<std::int64_t>(g2));
    const i128 d = i128(den_ / static_cast<std::int64_t>(g2)) * (o.den_ / static_cast<std::int64_t>(g1));
    if (fits(n) && fits(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      return *this;
    }
    set_big(mpq_class(to_mpz(n), to_mpz(d)));
    return *this;
  }
  mpq_class r = to_mpq() * o.to_mpq();
  set_big(std::move(r));
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DivisionByZero();
  if (!big_ && !o.big_) {
    Rational inv;
    inv.num_ = o.num_ < 0 ? -o.den_ : o.den_;
    inv.den_ = o.num_ < 0 ? -o.num_ : o.num_;
    return *this *= inv;
  }
  mpq_class r = to_mpq() / o.to_mpq();
  set_big(std::move(r));
  return *this;
}

bool operator==(const Rational& x, const Rational& y) {
  if (!x.big_ && !y.big_) return x.num_ == y.num_ && x.den_ == y.den_;
  if (x.big_ && y.big_) return *x.big_ == *y.big_;
  return false;
}

std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
  int c;
  if (!x.big_ && !y.big_) {
    const i128 l = i128(x.num_) * y.den_, r = i128(y.num_) * x.den_;
    c = (l > r) - (l < r);
  } else {
    c = cmp(x.to_mpq(), y.to_mpq());
  }
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Integer Rational::floor() const {
  if (big_) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
    return q;
  }
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return Integer(static_cast<long>(q));
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace nilex
