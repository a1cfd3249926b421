#pragma once

// The acceptance suite: nine numbered checks, each with a time budget.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace nilex {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool checks_ok = false;
  double seconds = 0;
  double budget = 0;  // seconds
  std::vector<std::string> details;

  bool pass() const { return checks_ok && seconds < budget; }
};

struct AcceptanceOptions {
  std::uint64_t seed = 20261016;
  std::vector<int> only;  // empty: all
};

/// "criterion 4 PASS base exchange (21.3 s, budget 60 s)"
std::string summary_line(const CriterionResult& r);

/// Runs the selected criteria, printing each summary line and its details
/// to `log` (when non-null) as soon as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream* log);

}  // namespace nilex
