#include "nilex/qphi.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <vector>

namespace nilex {

QPhi& QPhi::operator+=(const QPhi& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QPhi& QPhi::operator-=(const QPhi& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QPhi& QPhi::operator*=(const QPhi& o) {
  // (a + b phi)(c + d phi) = (ac + bd) + (ad + bc + bd) phi
  if (o.is_rational()) {
    a_ *= o.a_;
    b_ *= o.a_;
    return *this;
  }
  if (is_rational()) {
    b_ = a_ * o.b_;
    a_ *= o.a_;
    return *this;
  }
  Rational ac = a_ * o.a_;
  Rational bd = b_ * o.b_;
  Rational ad = a_ * o.b_;
  b_ *= o.a_;
  b_ += ad;
  b_ += bd;
  a_ = std::move(ac);
  a_ += bd;
  return *this;
}

QPhi& QPhi::operator/=(const QPhi& o) {
  if (o.is_zero()) throw DivisionByZero();
  if (o.is_rational()) {
    a_ /= o.a_;
    b_ /= o.a_;
    return *this;
  }
  // x / y = x * conj(y) / N(y); N(y) != 0 for y != 0 since phi is irrational.
  Rational n = o.norm();
  *this *= o.conjugate();
  a_ /= n;
  b_ /= n;
  return *this;
}

QPhi QPhi::conjugate() const { return QPhi(a_ + b_, -b_); }

Rational QPhi::norm() const {
  Rational n = a_ * a_;
  n += a_ * b_;
  n -= b_ * b_;
  return n;
}

int sign(const QPhi& x) {
  const int sa = x.rational_part().sign();
  const int sb = x.phi_part().sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  if (x.rational_part().is_small() && x.phi_part().is_small()) {
    // Floating filter; each part carries a few ulps of relative error.
    const double da = x.rational_part().to_double();
    const double db = x.phi_part().to_double();
    const double v = da + db * 1.6180339887498949;
    const double err = 1e-15 * (std::fabs(da) + 2.0 * std::fabs(db));
    if (v > err) return 1;
    if (v < -err) return -1;
  }
  // Opposite signs: compare -a/b with phi, i.e. read off the sign of the norm.
  return sa * x.norm().sign();
}

std::strong_ordering operator<=>(const QPhi& x, const QPhi& y) {
  if (x.b_ == y.b_) return x.a_ <=> y.a_;
  const int s = sign(x - y);
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

QPhi abs(const QPhi& x) { return sign(x) < 0 ? -x : x; }
const QPhi& min(const QPhi& x, const QPhi& y) { return y < x ? y : x; }
const QPhi& max(const QPhi& x, const QPhi& y) { return x < y ? y : x; }

FloorFrac floor_frac(const QPhi& x) {
  const Rational& a = x.rational_part();
  const Rational& b = x.phi_part();
  if (b.is_zero()) {
    Integer n = a.floor();
    return {n, QPhi(a - Rational(n))};
  }
  // Bracket phi between consecutive convergents F_{k+1}/F_k, which alternate
  // around phi, until a + b*phi sits between two consecutive integers.
  Integer f0 = 1, f1 = 1, f2 = 2;
  for (;;) {
    Rational c1(f1, f0), c2(f2, f1);
    const bool c1_low = c1 < c2;
    const Rational& lo = c1_low ? c1 : c2;
    const Rational& hi = c1_low ? c2 : c1;
    const bool increasing = b.sign() > 0;
    Rational end_lo = a + b * (increasing ? lo : hi);
    Rational end_hi = a + b * (increasing ? hi : lo);
    // end_lo < x < end_hi
    Integer n = end_lo.floor();
    if (end_hi <= Rational(Integer(n + 1))) return {n, x - QPhi(Rational(n))};
    f0 = f1;
    f1 = f2;
    f2 = f0 + f1;
  }
}

Integer fibonacci(long k) {
  const bool neg = k < 0;
  const unsigned long m = neg ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
  Integer f;
  mpz_fib_ui(f.get_mpz_t(), m);
  if (neg && m % 2 == 0) f = -f;
  return f;
}

QPhi phi_power(long k) { return QPhi(Rational(fibonacci(k - 1)), Rational(fibonacci(k))); }

mpf_class to_mpf(const QPhi& x, unsigned bits) {
  mpf_class five(5, bits);
  mpf_class root(0, bits);
  mpf_sqrt(root.get_mpf_t(), five.get_mpf_t());
  mpf_class phi(root + 1, bits);
  phi /= 2;
  mpf_class a(x.rational_part().to_mpq(), bits);
  mpf_class b(x.phi_part().to_mpq(), bits);
  mpf_class out(a + b * phi, bits);
  return out;
}

Approx approx(const QPhi& x) {
  const double a = x.rational_part().to_double();
  const double b = x.phi_part().to_double();
  const double v = a + b * 1.6180339887498949;
  // Each conversion is within 2 ulp; phi's constant within 1 ulp; one
  // multiplication and one addition.
  return {v, 1e-15 * (std::fabs(a) + 2.0 * std::fabs(b)) + 1e-300};
}

double to_double(const QPhi& x) { return to_mpf(x, 128).get_d(); }

std::string to_decimal(const QPhi& x, int places) {
  mpf_class v = to_mpf(x, 200);
  std::vector<char> buf(256);
  int n = gmp_snprintf(buf.data(), buf.size(), "%.*Ff", places, v.get_mpf_t());
  if (n >= 0 && static_cast<std::size_t>(n) >= buf.size()) {
    buf.resize(static_cast<std::size_t>(n) + 1);
    gmp_snprintf(buf.data(), buf.size(), "%.*Ff", places, v.get_mpf_t());
  }
  std::string s(buf.data());
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::array<std::string, 4> to_strings(const QPhi& x) {
  return {x.rational_part().numerator().get_str(), x.rational_part().denominator().get_str(),
          x.phi_part().numerator().get_str(), x.phi_part().denominator().get_str()};
}

QPhi from_strings(const std::array<std::string, 4>& parts) {
  Integer v[4];
  for (int i = 0; i < 4; ++i) {
    if (parts[i].empty() || v[i].set_str(parts[i], 10) != 0)
      throw std::invalid_argument("malformed Q(phi) component '" + parts[i] + "'");
  }
  return QPhi(Rational(v[0], v[1]), Rational(v[2], v[3]));
}

std::string to_string(const QPhi& x) {
  const Rational& a = x.rational_part();
  const Rational& b = x.phi_part();
  if (b.is_zero()) return a.str();
  std::string out = a.is_zero() ? "" : a.str();
  if (b == Rational(1)) {
    out += out.empty() ? "phi" : "+phi";
  } else if (b == Rational(-1)) {
    out += "-phi";
  } else {
    if (b.sign() > 0 && !out.empty()) out += "+";
    out += b.str() + "*phi";
  }
  return out;
}

QPhi parse_qphi(const std::string& text) {
  std::string t;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  }
  auto fail = [&]() -> QPhi { throw std::invalid_argument("cannot parse '" + text + "' as a + b*phi"); };
  if (t.empty()) return fail();
  auto integer = [&](std::size_t& i, Integer& out) {
    const std::size_t start = i;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
    if (i == start) return false;
    out.set_str(t.substr(start, i - start), 10);
    return true;
  };
  Rational a, b;
  std::size_t i = 0;
  bool first = true;
  while (i < t.size()) {
    int sgn = 1;
    if (t[i] == '+' || t[i] == '-') {
      sgn = t[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      return fail();
    }
    first = false;
    Integer num = 1, den = 1;
    const bool has_num = integer(i, num);
    if (has_num && i < t.size() && t[i] == '/') {
      ++i;
      if (!integer(i, den)) return fail();
    }
    bool is_phi = false;
    if (i < t.size() && t[i] == '*') {
      ++i;
      if (t.compare(i, 3, "phi") != 0) return fail();
    }
    if (t.compare(i, 3, "phi") == 0) {
      is_phi = true;
      i += 3;
      if (i < t.size() && t[i] == '/') {
        ++i;
        Integer d2;
        if (!integer(i, d2)) return fail();
        den *= d2;
      }
    }
    if (!has_num && !is_phi) return fail();
    if (den == 0) return fail();
    Rational v(num, den);
    if (sgn < 0) v.negate();
    (is_phi ? b : a) += v;
  }
  return QPhi(a, b);
}

std::ostream& operator<<(std::ostream& os, const QPhi& x) { return os << to_string(x); }

}  // namespace nilex
