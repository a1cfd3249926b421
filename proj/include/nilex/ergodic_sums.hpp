#pragma once

// Birkhoff sums S_n = sum_{k=0}^{n} ({x0 + k/phi^2} - 1/2), exact in Q(phi).

#include <cstddef>
#include <string>
#include <vector>

#include "nilex/qphi.hpp"

namespace nilex {

/// Walks k = 0, 1, 2, ... keeping the fractional part and the partial sum.
class BirkhoffWalker {
 public:
  explicit BirkhoffWalker(const QPhi& x0);
  /// Index of the last included term.
  long index() const { return n_; }
  const QPhi& sum() const { return sum_; }
  /// {x0 + index/phi^2}
  const QPhi& frac() const { return frac_; }
  void advance();

 private:
  QPhi frac_, sum_;
  long n_ = 0;
};

QPhi birkhoff_sum(const QPhi& x0, long n);
/// Direct evaluation, term by term through floor_frac.
QPhi birkhoff_sum_direct(const QPhi& x0, long n);

struct SumRecord {
  long n = 0;
  QPhi value;
  bool is_record = false;
};

/// Indices n <= N where |S_n| exceeds every earlier |S_j|; n = 0 first.
std::vector<SumRecord> record_maxima(const QPhi& x0, long N);

/// max_{n <= N} |S_n| for each N in checkpoints (ascending).
std::vector<QPhi> running_maxima(const QPhi& x0, const std::vector<long>& checkpoints);

/// Header "n,S_n,is_record", one row per n = 0..N, S_n to 12 places.
std::string sums_csv(const QPhi& x0, long N);

/// The drifted form n/(2 phi^3) + sum_{k=0}^{n} ({x0 + k/phi^2} - 1/phi)
/// minus S_n. Equal to 1/2 - 1/phi for every n.
QPhi drift_form_difference(const QPhi& x0, long n);

}  // namespace nilex
