// nilex command-line tool. Exit status: 0 success, 1 failed check, 2 usage.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nilex/acceptance.hpp"
#include "nilex/complexity.hpp"
#include "nilex/ergodic_sums.hpp"
#include "nilex/exchange_io.hpp"
#include "nilex/theorem1.hpp"

using namespace nilex;

namespace {

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string out;
  std::uint64_t seed = 20261016;
  int level = 1;
  std::size_t max_n = 12;
  std::string reading = "corrected";
  bool cells = false;
  std::string seed_lang = "min";
  std::size_t iters = 25;
  std::size_t max_len = 12;
  std::string format;
  std::string alpha = "2-phi", beta = "2phi-3";
  bool strict = false;
  int step = 2;
  std::string x0 = "0";
  long sums_n = 1000;
  int width = 800;
  std::vector<int> only;
};

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + cfg.out);
  f << text;
}

BaseReading reading_of(const std::string& s) {
  if (s == "corrected") return BaseReading::Corrected;
  if (s == "open-q") return BaseReading::CorrectedOpenQ;
  return BaseReading::Literal;
}

// Comment header with the hypothesis checks; throws CheckFailure after
// the text is emitted when one fails.
std::string checked_exchange(const PieceExchange& e, std::vector<std::string>& failures) {
  std::ostringstream os;
  const auto a = piece_areas(e);
  const QPhi inv_phi = QPhi::phi() - QPhi(1);
  const bool areas_ok = a.size() == 2 && a[0] == inv_phi && a[1] == inv_phi * inv_phi;
  os << "# level " << e.level << '\n';
  os << "# areas " << to_string(a[0]) << ", " << to_string(a[1]) << (areas_ok ? "" : "  (expected 1/phi, 1/phi^2)")
     << '\n';
  if (!areas_ok) failures.push_back("areas are not 1/phi, 1/phi^2");
  const QPhi ov = overlap_area(e);
  os << "# overlap " << to_string(ov) << '\n';
  if (!ov.is_zero()) failures.push_back("pieces overlap");
  const WitnessInterval w = projection_witness(e);
  os << "# witness [" << to_string(w.lo) << ", " << to_string(w.hi) << "]"
     << (w.feasible() ? "" : " empty") << '\n';
  if (!w.feasible()) failures.push_back("no projection witness");
  if (e.level == 1) {
    os << "# reference z " << to_string(reference_witness())
       << (w.contains(reference_witness()) ? " confirmed" : " not in the witness set") << '\n';
  }
  os << exchange_to_text(e);
  return os.str();
}

void finish_checks(const std::vector<std::string>& failures) {
  if (failures.empty()) return;
  std::string msg;
  for (const auto& f : failures) msg += (msg.empty() ? "" : "; ") + f;
  throw CheckFailure(msg);
}

void cmd_base(const Config& cfg) {
  std::vector<std::string> failures;
  emit(cfg, checked_exchange(build_base_exchange(reading_of(cfg.reading)), failures));
  finish_checks(failures);
}

void cmd_renorm(const Config& cfg) {
  std::vector<std::string> failures;
  emit(cfg, checked_exchange(exchange_at_level(cfg.level), failures));
  finish_checks(failures);
}

void cmd_complexity(const Config& cfg) {
  const PieceExchange e = exchange_at_level(cfg.level);
  if (cfg.cells) {
    emit(cfg, cells_text(refine(e, cfg.max_n)));
  } else {
    emit(cfg, complexity_csv(cfg.level, complexity_table(e, cfg.max_n)));
  }
}

void cmd_language(const Config& cfg) {
  const Language L0 = cfg.seed_lang == "full" ? Language::full(2, cfg.max_len)
                                              : Language::closure(2, cfg.max_len, {Word::parse("1"), Word::parse("2")});
  const Language L = iterate_language(L0, cfg.iters, cfg.max_len);
  if (cfg.format == "text") {
    emit(cfg, L.export_text());
  } else {
    std::vector<std::pair<std::size_t, std::size_t>> rows;
    for (std::size_t n = 1; n <= cfg.max_len; ++n) rows.emplace_back(n, L.complexity(n));
    emit(cfg, complexity_csv(rows));
  }
  const bool fib = L == Language::of_fixed_point(fibonacci_substitution(), cfg.max_len);
  std::cerr << "Fibonacci language up to length " << cfg.max_len << ": " << (fib ? "reached" : "not reached") << '\n';
}

void cmd_translation(const Config& cfg) {
  const QPhi a = parse_qphi(cfg.alpha), b = parse_qphi(cfg.beta);
  const auto tb =
      build_translation_exchange(a, b, cfg.strict ? DependencePolicy::Strict : DependencePolicy::Report);
  if (tb.relation) {
    std::cerr << "note: " << tb.relation->n << "*alpha + " << tb.relation->m << "*beta = " << tb.relation->k << '\n';
  }
  std::ostringstream os;
  os << "n,p_n\n";
  std::vector<std::string> failures;
  for (const auto& r : complexity_table(tb.exchange, cfg.max_n)) {
    os << r.n << ',' << r.p << '\n';
    if (r.p < 2 * r.n + 1) failures.push_back("p(" + std::to_string(r.n) + ") < 2n+1");
  }
  emit(cfg, os.str());
  finish_checks(failures);
}

void cmd_theorem1(const Config& cfg) {
  const auto scenarios = enumerate_scenarios(cfg.step);
  std::vector<std::string> failures;
  for (const auto& s : scenarios) {
    if (!detect_dependence(derive_constraints(s), Shifts::symbolic(s.piece_count)).nonzero())
      failures.push_back(s.name + " forces no relation");
  }
  if (cfg.format == "json") {
    emit(cfg, scenarios_json(scenarios));
    finish_checks(failures);
    return;
  }
  std::ostringstream os;
  for (const auto& s : scenarios) os << scenario_report(s) << '\n';
  if (cfg.step >= 2) {
    const CoverageReport cov = coverage(cfg.step);
    os << "coverage: " << cov.shapes.size() << " shapes, " << cov.covered.size() << " reached by the cases above";
    if (cov.brute_forced) os << (cov.brute_force_agrees ? ", brute force agrees" : ", brute force DISAGREES");
    os << '\n';
    for (const auto& sh : cov.uncovered) {
      const Scenario s = scenario_from_shape(sh);
      os << "flagged " << shape_name(sh) << ": "
         << detect_dependence(derive_constraints(s), Shifts::symbolic(s.piece_count)).str() << '\n';
    }
  }
  emit(cfg, os.str());
  finish_checks(failures);
}

void cmd_sums(const Config& cfg) { emit(cfg, sums_csv(parse_qphi(cfg.x0), cfg.sums_n)); }

void cmd_render(const Config& cfg) {
  SvgOptions opt;
  opt.width = cfg.width;
  emit(cfg, render_svg(exchange_at_level(cfg.level), opt));
}

void cmd_verify(const Config& cfg) {
  AcceptanceOptions opt;
  opt.seed = cfg.seed;
  opt.only = cfg.only;
  std::ostringstream os;
  const auto results = run_acceptance(opt, cfg.out.empty() ? &std::cout : &os);
  if (!cfg.out.empty()) emit(cfg, os.str());
  int failed = 0;
  for (const auto& r : results) failed += !r.pass();
  if (failed) throw CheckFailure(std::to_string(failed) + " criteria failed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Piece exchanges over Q(phi): renormalization, coding complexity, Birkhoff sums"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("-o,--out", cfg.out, "Write the result to this file instead of stdout");
  app.add_option("--seed", cfg.seed, "Seed for pseudo-random exact points");

  std::function<void(const Config&)> action;
  auto sub = [&](const char* name, const char* help, void (*fn)(const Config&)) {
    CLI::App* s = app.add_subcommand(name, help);
    s->callback([&action, fn] { action = fn; });
    return s;
  };

  auto* base = sub("base", "Emit the base exchange", cmd_base);
  base->add_option("--reading", cfg.reading, "Piece definition")
      ->check(CLI::IsMember({"corrected", "open-q", "literal"}));

  auto* renorm = sub("renorm", "Emit the exchange after N-1 renormalizations", cmd_renorm);
  renorm->add_option("--level", cfg.level, "Level N >= 1")->required()->check(CLI::Range(1, 1000));

  auto* cx = sub("complexity", "Coding complexity p(1..K) of a level", cmd_complexity);
  cx->add_option("--level", cfg.level, "Level N >= 1")->required()->check(CLI::Range(1, 1000));
  cx->add_option("--max-n", cfg.max_n, "Largest word length")->required()->check(CLI::Range(1, 64));
  cx->add_flag("--cells", cfg.cells, "Emit the refinement cells of length max-n instead");

  auto* lang = sub("language", "Iterate the Fibonacci substitution on a seed language", cmd_language);
  lang->add_option("--seed-lang", cfg.seed_lang, "min = {e,1,2}, full = every word")
      ->required()
      ->check(CLI::IsMember({"min", "full"}));
  lang->add_option("--iters", cfg.iters, "Iterations")->required()->check(CLI::Range(0, 1000));
  lang->add_option("--max-len", cfg.max_len, "Word length cap")->required()->check(CLI::Range(1, 20));
  lang->add_option("--format", cfg.format, "csv (complexity) or text (listing)")
      ->check(CLI::IsMember({"csv", "text"}));

  auto* trans = sub("translation", "Complexity of the four-piece torus translation exchange", cmd_translation);
  trans->add_option("--alpha", cfg.alpha, "Horizontal translation, e.g. 2-phi");
  trans->add_option("--beta", cfg.beta, "Vertical translation, e.g. 2phi-3");
  trans->add_option("--max-n", cfg.max_n, "Largest word length")->required()->check(CLI::Range(1, 64));
  trans->add_flag("--strict", cfg.strict, "Reject rationally dependent parameters");

  auto* th = sub("theorem1", "Case reports for the complexity lower bound at step n", cmd_theorem1);
  th->add_option("--n", cfg.step, "Step n >= 1")->required()->check(CLI::Range(1, 40));
  th->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* sums = sub("sums", "Birkhoff sums of {x0 + k/phi^2} - 1/2 as CSV", cmd_sums);
  sums->add_option("--max-n", cfg.sums_n, "Last index")->required()->check(CLI::Range(0L, 100'000'000L));
  sums->add_option("--x0", cfg.x0, "Start, e.g. 0 or 1/3+phi/7");

  auto* render = sub("render", "SVG picture of a level", cmd_render);
  render->add_option("--level", cfg.level, "Level N >= 1")->required()->check(CLI::Range(1, 1000));
  render->add_option("--width", cfg.width, "Width in pixels")->check(CLI::Range(50, 10000));

  auto* verify = sub("verify", "Run the acceptance suite", cmd_verify);
  verify->add_option("--only", cfg.only, "Criterion numbers to run")->check(CLI::Range(1, 9));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }
  try {
    action(cfg);
  } catch (const CheckFailure& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return 1;
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis failed: " << e.what() << '\n';
    return 1;
  } catch (const RationalDependence& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
