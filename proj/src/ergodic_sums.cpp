#include "nilex/ergodic_sums.hpp"

#include <sstream>
#include <stdexcept>

namespace nilex {

namespace {

const QPhi& step_size() {
  static const QPhi c = QPhi(2) - QPhi::phi();  // 1/phi^2
  return c;
}

const QPhi& half() {
  static const QPhi h = QPhi(Rational(1, 2));
  return h;
}

}  // namespace

BirkhoffWalker::BirkhoffWalker(const QPhi& x0) : frac_(floor_frac(x0).frac) { sum_ = frac_ - half(); }

void BirkhoffWalker::advance() {
  frac_ += step_size();
  if (frac_ >= QPhi(1)) frac_ -= QPhi(1);
  sum_ += frac_;
  sum_ -= half();
  ++n_;
}

QPhi birkhoff_sum(const QPhi& x0, long n) {
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  BirkhoffWalker w(x0);
  while (w.index() < n) w.advance();
  return w.sum();
}

QPhi birkhoff_sum_direct(const QPhi& x0, long n) {
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  QPhi s;
  for (long k = 0; k <= n; ++k) s += floor_frac(x0 + QPhi(k) * step_size()).frac - half();
  return s;
}

std::vector<SumRecord> record_maxima(const QPhi& x0, long N) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  BirkhoffWalker w(x0);
  std::vector<SumRecord> out;
  QPhi best = abs(w.sum());
  out.push_back({0, w.sum(), true});
  while (w.index() < N) {
    w.advance();
    QPhi a = abs(w.sum());
    if (a > best) {
      best = std::move(a);
      out.push_back({w.index(), w.sum(), true});
    }
  }
  return out;
}

std::vector<QPhi> running_maxima(const QPhi& x0, const std::vector<long>& checkpoints) {
  std::vector<QPhi> out;
  BirkhoffWalker w(x0);
  QPhi best = abs(w.sum());
  for (long c : checkpoints) {
    if (c < w.index()) throw std::invalid_argument("checkpoints must ascend");
    while (w.index() < c) {
      w.advance();
      QPhi a = abs(w.sum());
      if (a > best) best = std::move(a);
    }
    out.push_back(best);
  }
  return out;
}

std::string sums_csv(const QPhi& x0, long N) {
  if (N < 0) throw std::invalid_argument("N must be >= 0");
  std::ostringstream os;
  os << "n,S_n,is_record\n";
  BirkhoffWalker w(x0);
  QPhi best = abs(w.sum());
  os << "0," << to_decimal(w.sum(), 12) << ",1\n";
  while (w.index() < N) {
    w.advance();
    QPhi a = abs(w.sum());
    const bool rec = a > best;
    if (rec) best = std::move(a);
    os << w.index() << ',' << to_decimal(w.sum(), 12) << ',' << (rec ? 1 : 0) << '\n';
  }
  return os.str();
}

QPhi drift_form_difference(const QPhi& x0, long n) {
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  const QPhi inv_phi = QPhi::phi() - QPhi(1);
  const QPhi drift = QPhi(n) / (QPhi(2) * phi_power(3));
  QPhi s = drift;
  BirkhoffWalker w(x0);
  s += w.frac() - inv_phi;
  while (w.index() < n) {
    w.advance();
    s += w.frac() - inv_phi;
  }
  return s - w.sum();
}

}  // namespace nilex
