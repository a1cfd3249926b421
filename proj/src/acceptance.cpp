#include "nilex/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "nilex/complexity.hpp"
#include "nilex/ergodic_sums.hpp"
#include "nilex/exchange.hpp"
#include "nilex/theorem1.hpp"
#include "nilex/words.hpp"

namespace nilex {

namespace {

using Clock = std::chrono::steady_clock;

struct Ctx {
  CriterionResult* r;
  bool ok = true;
  void check(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      r->details.push_back("FAILED: " + what);
    }
  }
  void note(const std::string& s) { r->details.push_back(s); }
};

std::string join(const std::vector<std::string>& v, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-1'000'000, 1'000'000), den(1, 10'000);
  return Rational(num(rng), den(rng));
}

QPhi random_qphi(std::mt19937_64& rng) { return QPhi(random_rational(rng), random_rational(rng)); }

const QPhi& inv_phi() {
  static const QPhi v = QPhi::phi() - QPhi(1);
  return v;
}
const QPhi& inv_phi2() {
  static const QPhi v = QPhi(2) - QPhi::phi();
  return v;
}

void field_axioms(Ctx& c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int cases = 10'000;
  int failures = 0;
  for (int i = 0; i < cases; ++i) {
    QPhi x = random_qphi(rng), y = random_qphi(rng), z = random_qphi(rng);
    if (i % 4 == 0) {
      // Near-cancelling: F_{k+1} - F_k phi, whose sign alternates with k.
      const long k = 2 + static_cast<long>(rng() % 60);
      x = QPhi(Rational(fibonacci(k + 1), Integer(1)), Rational(-fibonacci(k), Integer(1)));
    }
    bool ok = (x + y) + z == x + (y + z) && (x * y) * z == x * (y * z) && x * (y + z) == x * y + x * z &&
              x + y == y + x && x * y == y * x;
    if (!x.is_zero()) ok = ok && x * (QPhi(1) / x) == QPhi(1);
    const int s = sign(x);
    const mpf_class hp = to_mpf(x, 512);
    ok = ok && s == sgn(hp);
    const double d = to_double(x);
    if (std::abs(d) > 1e-6) ok = ok && s == (d > 0 ? 1 : -1);
    const FloorFrac ff = floor_frac(x);
    ok = ok && QPhi(Rational(ff.floor)) + ff.frac == x && sign(ff.frac) >= 0 && ff.frac < QPhi(1);
    ok = ok && ((x < y) + (x == y) + (x > y)) == 1 && (x < y) == (sign(y - x) > 0);
    if (!ok) ++failures;
  }
  c.check(failures == 0, std::to_string(failures) + " failing cases");
  c.note(std::to_string(cases) + " random cases, " + std::to_string(failures) + " failures");
}

void word_complexity(Ctx& c) {
  std::vector<std::string> bad;
  for (std::size_t n = 1; n <= 30; ++n) {
    const std::size_t f = certified_complexity([](std::size_t L) { return fibonacci_word(L); }, n);
    const std::size_t t = certified_complexity([](std::size_t L) { return tribonacci_word(L); }, n);
    if (f != n + 1) bad.push_back("fibonacci p(" + std::to_string(n) + ")=" + std::to_string(f));
    if (t != 2 * n + 1) bad.push_back("tribonacci p(" + std::to_string(n) + ")=" + std::to_string(t));
  }
  c.check(bad.empty(), join(bad));
  c.note("fibonacci p(n)=n+1 and tribonacci p(n)=2n+1 for n=1..30");
}

void language_convergence(Ctx& c) {
  const std::size_t cap = 12, iters = 25;
  const Language target = Language::of_fixed_point(fibonacci_substitution(), cap);
  auto run = [&](const Language& L0, bool increasing, const char* name) {
    const auto chain = language_chain(L0, iters);
    std::size_t reached = iters + 1;
    bool monotone = true;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      if (reached > iters && chain[i] == target) reached = i;
      if (i + 1 < chain.size()) {
        monotone = monotone && (increasing ? chain[i].subset_of(chain[i + 1]) : chain[i + 1].subset_of(chain[i]));
      }
    }
    c.check(reached <= iters, std::string(name) + " chain does not reach the Fibonacci slice");
    c.check(monotone, std::string(name) + " chain is not " + (increasing ? "increasing" : "decreasing"));
    c.note(std::string(name) + ": reaches the slice at iteration " + std::to_string(reached) + ", " +
           (increasing ? "increasing" : "decreasing") + (monotone ? " at every step" : " FAILS"));
  };
  run(Language::closure(2, cap, {Word::parse("1"), Word::parse("2")}), true, "from {e,1,2}");
  run(Language::full(2, cap), false, "from the full language");
}

void base_exchange(Ctx& c, std::uint64_t seed) {
  const PieceExchange e = build_base_exchange();
  const auto a = piece_areas(e);
  c.check(a.size() == 2 && a[0] == inv_phi() && a[1] == inv_phi2(), "areas are not 1/phi, 1/phi^2");
  c.note("areas " + to_string(a[0]) + ", " + to_string(a[1]));
  const WitnessInterval w = projection_witness(e);
  c.check(w.feasible(), "no projection witness");
  const bool ref = w.contains(reference_witness());
  c.note("witness set [" + to_string(w.lo) + ", " + to_string(w.hi) + "], reference z " +
         (ref ? "confirmed" : "NOT contained"));
  const WitnessInterval lit = projection_witness(build_base_exchange(BaseReading::Literal));
  c.note("literal reading: witness set [" + to_string(lit.lo) + ", " + to_string(lit.hi) + "], reference z " +
         (lit.contains(reference_witness()) ? "contained" : "not contained (discrepancy, corrected reading used)"));
  std::mt19937_64 rng(seed);
  const Locator loc(e);
  int left = 0;
  for (int i = 0; i < 50; ++i) {
    const Point p = random_point(e, rng);
    try {
      (void)loc.code(p, 100'000);
    } catch (const LocateError&) {
      ++left;
    }
  }
  c.check(left == 0, std::to_string(left) + " orbits left the domain");
  c.note("50 orbits of 100000 steps stay in D");
}

void renormalization(Ctx& c) {
  PieceExchange e = build_base_exchange();
  std::vector<std::string> c2s;
  const ShearMap back{QPhi(-1), QPhi(), QPhi()};
  for (int N = 1; N <= 12; ++N) {
    const std::string at = " at level " + std::to_string(N);
    const auto a = piece_areas(e);
    c.check(a[0] == inv_phi() && a[1] == inv_phi2(), "areas" + at);
    c.check(overlap_area(e).is_zero(), "pieces overlap" + at);
    const PieceExchange next = renormalize(e);
    const Region d1_moved = t_phi().apply(psi_inverse(e.pieces[0].region));
    c.check(included(d1_moved, next.pieces[1].region), "T_phi psi^-1(D1) not inside D2'" + at);
    const Region d2_moved = t_phi().apply(psi_inverse(e.pieces[1].region));
    c.check(included(d2_moved, next.pieces[0].region), "T_phi psi^-1(D2) not inside D1'" + at);
    c.check(included(back.apply(t_phi().apply(next.pieces[1].region)), next.pieces[0].region),
            "T_phi(D2') - (1,0) not inside D1'" + at);
    const QPhi c2 = common_leading_coefficient(e.domain());
    const QPhi c2n = common_leading_coefficient(next.domain());
    c.check(c2n == -phi_power(2) * c2 - QPhi::phi() / QPhi(2), "leading coefficient recurrence" + at);
    c2s.push_back(to_string(c2));
    e = next;
  }
  c.note("levels 1..12: areas (1/phi, 1/phi^2), zero overlap, the three inclusions, c2 recurrence");
  c.note("c2: " + join(c2s, ", "));
}

void sturmian_levels(Ctx& c) {
  PieceExchange e = build_base_exchange();
  std::vector<std::size_t> M;
  std::vector<std::string> Ms;
  const Language fib6 = Language::of_fixed_point(fibonacci_substitution(), 6);
  std::vector<Language> langs;
  for (int N = 1; N <= 10; ++N) {
    const auto rows = complexity_table(e, 12);
    M.push_back(sturmian_prefix(rows));
    Ms.push_back(std::to_string(M.back()));
    if (N <= 9) langs.push_back(language_from_refinement(e, 8));
    if (N == 10) {
      bool ok = true;
      for (std::size_t k = 0; k < 5; ++k) ok = ok && rows[k].p == k + 2;
      c.check(ok, "level 10 complexity is not k+1 for k=1..5");
      c.check(language_from_refinement(e, 6) == fib6, "level 10 language slice differs from Fibonacci");
    }
    e = renormalize(e);
  }
  for (std::size_t i = 0; i + 1 < langs.size(); ++i) {
    c.check(substitute_language(fibonacci_substitution(), langs[i]) == langs[i + 1],
            "language relation fails for N=" + std::to_string(i + 1));
  }
  c.check(std::is_sorted(M.begin(), M.end()), "M(N) decreases");
  c.note("level 10: p(k)=k+1 for k=1..5, language slice <= 6 is the Fibonacci slice");
  c.note("language of level N+1 = closure of sigma(level N), cap 8, N=1..8");
  c.note("M(N), N=1..10, horizon 12: " + join(Ms));
}

void complexity_growth(Ctx& c) {
  int total = 0, zero = 0;
  for (int n = 1; n <= 6; ++n) {
    for (const auto& s : enumerate_scenarios(n)) {
      ++total;
      if (!detect_dependence(derive_constraints(s), Shifts::symbolic(s.piece_count)).nonzero()) {
        ++zero;
        c.note("no relation: n=" + std::to_string(n) + " " + s.name);
      }
    }
  }
  c.check(zero == 0, "scenarios without a relation");
  c.note(std::to_string(total) + " scenarios for n=1..6, all with a nonzero integer relation");
  std::vector<std::string> flagged;
  int extra_zero = 0;
  for (int n = 2; n <= 6; ++n) {
    const CoverageReport cov = coverage(n);
    std::string line = "n=" + std::to_string(n) + ": " + std::to_string(cov.shapes.size()) + " shapes, " +
                       std::to_string(cov.uncovered.size()) + " outside the case families";
    if (cov.brute_forced) line += cov.brute_force_agrees ? ", brute force agrees" : ", brute force DISAGREES";
    for (const auto& sh : cov.uncovered) {
      const Scenario s = scenario_from_shape(sh);
      if (!detect_dependence(derive_constraints(s), Shifts::symbolic(s.piece_count)).nonzero()) ++extra_zero;
    }
    flagged.push_back(line);
  }
  for (const auto& f : flagged) c.note("coverage " + f);
  c.note(extra_zero == 0 ? "flagged shapes also force a nonzero relation"
                         : std::to_string(extra_zero) + " flagged shapes force no relation");

  const auto tb = build_translation_exchange(inv_phi2(), QPhi(Rational(-3), Rational(2)), DependencePolicy::Report);
  const auto rows = complexity_table(tb.exchange, 8);
  std::vector<std::string> ps;
  bool ok = true;
  for (const auto& r : rows) {
    ps.push_back(std::to_string(r.p));
    ok = ok && r.p >= 2 * r.n + 1;
  }
  c.check(ok, "translation exchange has p(n) < 2n+1");
  c.note("translation (2-phi, 2phi-3): p(1..8) = " + join(ps));
  if (tb.relation) {
    c.note("rational relation " + std::to_string(tb.relation->n) + "*alpha + " + std::to_string(tb.relation->m) +
           "*beta = " + std::to_string(tb.relation->k));
  }
  const BirkhoffCheck b =
      birkhoff_consistency(tb.exchange, Point{QPhi(Rational(1, 3)), QPhi(Rational(2, 7))}, 100'000);
  c.check(b.relation.nonzero() && b.distance < 1e-2, "Birkhoff frequencies do not satisfy the relation");
  std::ostringstream os;
  os << "derived relation " << b.relation.str() << "; orbit frequencies give " << b.value;
  c.note(os.str());
}

void halmos(Ctx& c, std::uint64_t seed) {
  const PieceExchange e = build_base_exchange();
  Refinement ref(e);
  std::vector<QPhi> vals;
  std::vector<std::string> vs;
  for (std::size_t n = 1; n <= 12; ++n) {
    ref.deepen_to(n);
    vals.push_back(ref.max_area());
    vs.push_back(to_decimal(vals.back(), 6));
  }
  bool nonincreasing = true;
  for (std::size_t i = 0; i + 1 < vals.size(); ++i) nonincreasing = nonincreasing && vals[i + 1] <= vals[i];
  c.check(nonincreasing && vals.back() < vals.front(), "max cell area does not decrease");
  c.note("max cell area n=1..12: " + join(vs));

  std::mt19937_64 rng(seed);
  const Locator loc(e);
  std::uniform_int_distribution<long> step(10, 50);
  int pairs = 0, separated = 0;
  std::size_t worst = 0;
  while (pairs < 200) {
    const Point p = random_point(e, rng);
    const QPhi dx(Rational(step(rng) * (rng() % 2 ? 1 : -1), 1000));
    const QPhi dy(Rational(step(rng) * (rng() % 2 ? 1 : -1), 1000));
    const Point q{p.x + dx, p.y + dy};
    try {
      (void)loc.locate_index(q);
    } catch (const LocateError&) {
      continue;
    }
    ++pairs;
    const Word a = loc.code(p, 1000), b = loc.code(q, 1000);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) {
        ++separated;
        worst = std::max(worst, i);
        break;
      }
    }
  }
  c.check(separated == pairs, std::to_string(pairs - separated) + " pairs not separated");
  c.note(std::to_string(separated) + "/200 pairs separated, latest first difference at step " + std::to_string(worst));
}

void unboundedness(Ctx& c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<QPhi> starts{QPhi(0)};
  std::uniform_int_distribution<long> a(0, 996), b(0, 990);
  for (int i = 0; i < 5; ++i) starts.emplace_back(Rational(a(rng), 997), Rational(b(rng), 991));
  const std::vector<long> decades{100, 1000, 10'000, 100'000};
  for (const auto& x0 : starts) {
    const auto m = running_maxima(x0, decades);
    bool inc = true;
    std::vector<std::string> ms;
    for (std::size_t i = 0; i < m.size(); ++i) {
      ms.push_back(to_decimal(m[i], 4));
      if (i) inc = inc && m[i] > m[i - 1];
    }
    c.check(inc, "records stall for x0=" + to_string(x0));
    c.note("x0=" + to_string(x0) + ": max|S_n| at 1e2..1e5 = " + join(ms));
  }
  PieceExchange e = build_base_exchange();
  QPhi prev = y_extent_bound(e.domain());
  std::vector<std::string> ys{to_decimal(prev, 4)};
  bool inc = true;
  for (int N = 2; N <= 20; ++N) {
    e = renormalize(e);
    const QPhi y = y_extent_bound(e.domain());
    inc = inc && y > prev;
    ys.push_back(to_decimal(y, 4));
    prev = y;
  }
  c.check(inc, "y extent does not increase");
  c.note("y extent bound N=1..20: " + join(ys));
}

struct Spec {
  int id;
  const char* title;
  double budget;
  std::function<void(Ctx&, std::uint64_t)> run;
};

}  // namespace

std::string summary_line(const CriterionResult& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, " (%.1f s, budget %.0f s)", r.seconds, r.budget);
  return "criterion " + std::to_string(r.id) + (r.pass() ? " PASS " : " FAIL ") + r.title + buf;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream* log) {
  const std::vector<Spec> specs{
      {1, "field axioms and order", 10, [](Ctx& c, std::uint64_t s) { field_axioms(c, s); }},
      {2, "Fibonacci and Tribonacci complexity", 5, [](Ctx& c, std::uint64_t) { word_complexity(c); }},
      {3, "language iteration converges", 10, [](Ctx& c, std::uint64_t) { language_convergence(c); }},
      {4, "base exchange", 60, [](Ctx& c, std::uint64_t s) { base_exchange(c, s); }},
      {5, "renormalization levels 1..12", 60, [](Ctx& c, std::uint64_t) { renormalization(c); }},
      {6, "Sturmian complexity of the iterated exchanges", 600, [](Ctx& c, std::uint64_t) { sturmian_levels(c); }},
      {7, "complexity at least 2n+1", 300, [](Ctx& c, std::uint64_t) { complexity_growth(c); }},
      {8, "partition refinement separates points", 120, [](Ctx& c, std::uint64_t s) { halmos(c, s); }},
      {9, "unboundedness evidence", 120, [](Ctx& c, std::uint64_t s) { unboundedness(c, s); }},
  };
  std::vector<CriterionResult> out;
  for (const auto& sp : specs) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), sp.id) == opt.only.end()) continue;
    CriterionResult r;
    r.id = sp.id;
    r.title = sp.title;
    r.budget = sp.budget;
    Ctx c{&r};
    const auto t0 = Clock::now();
    try {
      sp.run(c, opt.seed + static_cast<std::uint64_t>(sp.id));
    } catch (const std::exception& ex) {
      c.check(false, std::string("exception: ") + ex.what());
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    r.checks_ok = c.ok;
    if (log) {
      *log << summary_line(r) << '\n';
      for (const auto& d : r.details) *log << "    " << d << '\n';
      log->flush();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace nilex
