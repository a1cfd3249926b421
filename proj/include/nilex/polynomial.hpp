#pragma once

// Sparse multivariate polynomials with rational coefficients. Variables are
// small non-negative integers; names are supplied when printing.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "nilex/rational.hpp"

namespace nilex {

class Polynomial {
 public:
  using Monomial = std::vector<int>;  // sorted variable indices, repeated for powers

  Polynomial() = default;
  Polynomial(Rational c);  // NOLINT(google-explicit-constructor)
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  static Polynomial var(int i);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Least common multiple of the coefficient denominators.
  Integer denominator_lcm() const;
  /// True when every coefficient is an integer.
  bool has_integer_coefficients() const;
  Rational evaluate(const std::vector<Rational>& values) const;

  std::string str(const std::function<std::string(int)>& name) const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

}  // namespace nilex
