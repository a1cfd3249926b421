#pragma once

// Exact arithmetic in Q(phi), phi the golden mean (phi^2 = phi + 1).

#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nilex/rational.hpp"

namespace nilex {

/// a + b*phi with rational a, b. The representation is unique, so equality
/// is structural.
class QPhi {
 public:
  QPhi() = default;
  QPhi(long a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QPhi(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  QPhi(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static QPhi phi() { return QPhi(Rational(0), Rational(1)); }

  const Rational& rational_part() const { return a_; }
  const Rational& phi_part() const { return b_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }

  QPhi& operator+=(const QPhi& o);
  QPhi& operator-=(const QPhi& o);
  QPhi& operator*=(const QPhi& o);
  QPhi& operator/=(const QPhi& o);

  friend QPhi operator+(QPhi x, const QPhi& y) { return x += y; }
  friend QPhi operator-(QPhi x, const QPhi& y) { return x -= y; }
  friend QPhi operator*(QPhi x, const QPhi& y) { return x *= y; }
  friend QPhi operator/(QPhi x, const QPhi& y) { return x /= y; }
  friend QPhi operator-(QPhi x) {
    x.a_.negate();
    x.b_.negate();
    return x;
  }

  /// Galois conjugate a + b*(1 - phi).
  QPhi conjugate() const;
  /// Field norm x * conjugate(x) = a^2 + ab - b^2.
  Rational norm() const;

  friend bool operator==(const QPhi& x, const QPhi& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend std::strong_ordering operator<=>(const QPhi& x, const QPhi& y);

 private:
  Rational a_;
  Rational b_;
};

/// Exact sign of the real number a + b*phi.
int sign(const QPhi& x);

QPhi abs(const QPhi& x);
const QPhi& min(const QPhi& x, const QPhi& y);
const QPhi& max(const QPhi& x, const QPhi& y);

struct FloorFrac {
  Integer floor;
  QPhi frac;
};

/// Integer part and fractional part: floor <= x < floor + 1, frac = x - floor.
FloorFrac floor_frac(const QPhi& x);

/// phi^k = F_k phi + F_{k-1}, Fibonacci numbers extended to negative indices.
QPhi phi_power(long k);

/// Fibonacci number F_k for any integer k (F_{-k} = (-1)^{k+1} F_k).
Integer fibonacci(long k);

/// Floating embedding, for rendering and test oracles only.
mpf_class to_mpf(const QPhi& x, unsigned bits = 200);
double to_double(const QPhi& x);
/// Fixed-point decimal rendering through the floating embedding.
std::string to_decimal(const QPhi& x, int places);

/// Serialization as [a_num, a_den, b_num, b_den].
std::array<std::string, 4> to_strings(const QPhi& x);
QPhi from_strings(const std::array<std::string, 4>& parts);

/// A double with a rigorous absolute error bound. Used only to skip exact
/// evaluation when a sign is already certain; undecided cases fall back to
/// exact arithmetic.
struct Approx {
  double v = 0;
  double e = 0;

  friend Approx operator+(Approx x, Approx y) {
    const double v = x.v + y.v;
    return {v, x.e + y.e + kSlack * std::fabs(v)};
  }
  friend Approx operator-(Approx x, Approx y) {
    const double v = x.v - y.v;
    return {v, x.e + y.e + kSlack * std::fabs(v)};
  }
  friend Approx operator*(Approx x, Approx y) {
    const double v = x.v * y.v;
    return {v, std::fabs(x.v) * y.e + std::fabs(y.v) * x.e + x.e * y.e + kSlack * std::fabs(v)};
  }
  /// +1 / -1 when certain, 0 when undecided.
  int sure_sign() const { return v > e ? 1 : (v < -e ? -1 : 0); }
  double lo() const { return v - e; }
  double hi() const { return v + e; }

  static constexpr double kSlack = 4.5e-16;
};

Approx approx(const QPhi& x);

/// Human readable form, e.g. "-3/2+2*phi".
std::string to_string(const QPhi& x);
/// Inverse of to_string; also accepts "2phi", "phi/2" and spaces.
/// Throws std::invalid_argument.
QPhi parse_qphi(const std::string& text);
std::ostream& operator<<(std::ostream& os, const QPhi& x);

}  // namespace nilex
