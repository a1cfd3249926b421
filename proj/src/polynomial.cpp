#include "nilex/polynomial.hpp"

#include <algorithm>

namespace nilex {

Polynomial::Polynomial(Rational c) {
  if (!c.is_zero()) terms_[{}] = std::move(c);
}

Polynomial Polynomial::var(int i) {
  Polynomial p;
  p.terms_[{i}] = Rational(1);
  return p;
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

Rational Polynomial::constant_term() const {
  auto it = terms_.find({});
  return it == terms_.end() ? Rational() : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Polynomial::Monomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      std::sort(m.begin(), m.end());
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

Integer Polynomial::denominator_lcm() const {
  Integer l = 1;
  for (const auto& [m, c] : terms_) {
    const Integer d = c.denominator();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  return l;
}

bool Polynomial::has_integer_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_integer(); });
}

Rational Polynomial::evaluate(const std::vector<Rational>& values) const {
  Rational total;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int v : m) t *= values.at(static_cast<std::size_t>(v));
    total += t;
  }
  return total;
}

std::string Polynomial::str(const std::function<std::string(int)>& name) const {
  if (terms_.empty()) return "0";
  // Higher degree first, later variables first.
  std::vector<std::pair<Monomial, Rational>> ts(terms_.rbegin(), terms_.rend());
  std::stable_sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
  std::string out;
  for (const auto& [m, c] : ts) {
    Rational mag = abs(c);
    const bool neg = c.sign() < 0;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i) mono += "*";
      mono += name(m[i]);
    }
    if (mono.empty()) {
      out += mag.str();
    } else if (mag == Rational(1)) {
      out += mono;
    } else {
      out += mag.str() + "*" + mono;
    }
  }
  return out;
}

}  // namespace nilex
