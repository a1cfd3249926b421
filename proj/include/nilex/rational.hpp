#pragma once

// Exact rationals in lowest terms. Values whose numerator and denominator fit
// in 64 bits are stored inline; anything larger lives in a GMP mpq. The
// inline form is used whenever it can be, so equality is structural.

#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace nilex {

using Integer = mpz_class;

/// Thrown on division by an exact zero.
class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero") {}
};

class Rational {
 public:
  Rational() = default;
  Rational(long v) : num_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : num_(v) {}   // NOLINT(google-explicit-constructor)
  /// num/den reduced to lowest terms; throws DivisionByZero when den == 0.
  Rational(long num, long den);
  Rational(const Integer& num, const Integer& den);
  explicit Rational(const Integer& v);
  explicit Rational(const mpq_class& v);

  Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  bool is_small() const { return !big_; }
  int sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
  }
  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

  Integer numerator() const;
  Integer denominator() const;
  mpq_class to_mpq() const;
  double to_double() const;
  std::string str() const;  // "n" or "n/d"

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational x, const Rational& y) { return x += y; }
  friend Rational operator-(Rational x, const Rational& y) { return x -= y; }
  friend Rational operator*(Rational x, const Rational& y) { return x *= y; }
  friend Rational operator/(Rational x, const Rational& y) { return x /= y; }
  friend Rational operator-(Rational x) {
    x.negate();
    return x;
  }
  void negate();

  friend bool operator==(const Rational& x, const Rational& y);
  friend std::strong_ordering operator<=>(const Rational& x, const Rational& y);

  /// Largest integer <= x.
  Integer floor() const;

 private:
  void set_big(mpq_class v);
  void normalize_big();

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

inline int sgn(const Rational& r) { return r.sign(); }
Rational abs(const Rational& r);
std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace nilex
