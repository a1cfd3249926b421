// Acceptance runner: one pass/fail line per criterion, exit 1 if any fails.

#include <CLI11.hpp>

#include <iostream>

#include "nilex/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"nilex acceptance checks"};
  nilex::AcceptanceOptions opt;
  app.add_option("--only", opt.only, "criteria to run (1-9), repeatable")->check(CLI::Range(1, 9));
  app.add_option("--seed", opt.seed, "base seed");
  CLI11_PARSE(app, argc, argv);

  const auto results = nilex::run_acceptance(opt, &std::cout);
  bool ok = true;
  std::cout << "\nsummary\n";
  for (const auto& r : results) {
    std::cout << nilex::summary_line(r) << '\n';
    ok = ok && r.pass();
  }
  return ok ? 0 : 1;
}
