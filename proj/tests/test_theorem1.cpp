#include <doctest.h>

#include <json.hpp>

#include "nilex/theorem1.hpp"

using namespace nilex;

namespace {

// The relation is an identity on the whole solution line.
void check_relation_holds(const Dependence& d) {
  const IntegerRelation& rel = d.relation;
  if (rel.kind == IntegerRelation::Kind::Line) {
    REQUIRE(d.dr.size() == 1);
    CHECK((rel.coeff_r * d.dr[0] + rel.coeff_s * d.ds[0]).is_zero());
  }
  if (rel.kind != IntegerRelation::Kind::None) {
    CHECK(rel.coeff_r * d.r0 + rel.coeff_s * d.s0 == rel.constant);
    CHECK(rel.coeff_r.has_integer_coefficients());
    CHECK(rel.coeff_s.has_integer_coefficients());
    CHECK(rel.constant.has_integer_coefficients());
  }
}

Scenario two_pieces() { return enumerate_scenarios(1).at(0); }

}  // namespace

TEST_SUITE("theorem1_verifier") {
  TEST_CASE("polynomials") {
    const Polynomial n1 = Polynomial::var(0), m1 = Polynomial::var(1);
    const Polynomial p = (n1 + m1) * (n1 - m1);
    CHECK(p == n1 * n1 - m1 * m1);
    CHECK(p.str(shift_variable_name) == "-m1*m1 + n1*n1");
    CHECK((p * Rational(1, 2)).denominator_lcm() == 2);
    CHECK(p.evaluate({Rational(3), Rational(2)}) == Rational(5));
    CHECK(Polynomial(Rational(0)).is_zero());
    CHECK(Polynomial(7L).is_constant());
    CHECK(shift_variable_name(3) == "m2");
  }

  TEST_CASE("two pieces") {
    const Scenario s = two_pieces();
    CHECK(s.piece_count == 2);
    CHECK(s.transitions.empty());
    const MeasureSystem sys = derive_constraints(s);
    CHECK(sys.equalities.empty());
    const Dependence d = analyze(sys, Shifts::symbolic(2));
    CHECK(d.solution.dimension() == 1);
    CHECK(d.relation.kind == IntegerRelation::Kind::Line);
    CHECK(d.relation.str() == "(m2 - m1)*r - (n2 - n1)*s = -m1*n2 + n1*m2 in Z");
    check_relation_holds(d);
    // Shifts (0,0), (1,0): only the vertical mean is pinned.
    const IntegerRelation c = detect_dependence(sys, Shifts::concrete({0, 1}, {0, 0}));
    CHECK(c.str() == "-s = 0 in Z");
  }

  TEST_CASE("the three cases of the first step") {
    const auto scenarios = enumerate_scenarios(2);
    REQUIRE(scenarios.size() == 3);
    const char* shapes[] = {"a=1 b=1 c=0", "a=0 b=2 c=0", "a=0 b=1 c=1"};
    const char* relations[] = {
        "(2*m3 - 2*m2)*r - (2*n3 - 2*n2)*s = -m2*n3 + n2*m3 - m1*n3 + m1*n2 + n1*m3 - n1*m2 in Z",
        "(m3 + m2 - 2*m1)*r - (n3 + n2 - 2*n1)*s = -m1*n3 - m1*n2 + n1*m3 + n1*m2 in Z",
        "(2*m3 - m2 - m1)*r - (2*n3 - n2 - n1)*s = -m2*n3 + n2*m3 - m1*n3 + n1*m3 in Z"};
    for (std::size_t i = 0; i < 3; ++i) {
      CAPTURE(i);
      const Scenario& s = scenarios[i];
      CHECK(s.name == "case " + std::to_string(i + 1));
      s.validate();
      CHECK(shape_name(*classify(s)) == shapes[i]);
      const MeasureSystem sys = derive_constraints(s);
      CHECK(has_positive_solution(sys) == true);
      const Dependence d = analyze(sys, Shifts::symbolic(3));
      CHECK(d.relation.str() == relations[i]);
      CHECK(d.relation.nonzero());
      check_relation_holds(d);
      CHECK(scenario_report(s).find(std::string("relation: ") + relations[i]) != std::string::npos);
    }
  }

  TEST_CASE("measure equations") {
    const Scenario s = enumerate_scenarios(2)[0];
    const MeasureSystem sys = derive_constraints(s);
    REQUIRE(sys.equalities.size() == 3);
    CHECK(sys.equalities[0].text == "a1(1) + a1(2) = a2 + a3");
    CHECK(sys.format(sys.equalities[0]) == "a1(1) + a1(2) - a2 - a3 = 0");
    CHECK(sys.normalization.text == "a1(1) + a1(2) + a2 + a3 = 1");
    const AffineSolution sol = solve(sys);
    CHECK(sol.particular == std::vector<Rational>{Rational(1, 2), Rational(0), Rational(1, 2), Rational(0)});
    REQUIRE(sol.dimension() == 1);
    CHECK(sol.directions[0] == std::vector<Rational>{Rational(-1), Rational(1), Rational(-1), Rational(1)});
  }

  TEST_CASE("malformed and inconsistent scenarios") {
    Scenario bad = enumerate_scenarios(2)[0];
    bad.transitions.pop_back();
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = enumerate_scenarios(2)[0];
    bad.transitions[0].to = 9;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    MeasureSystem sys;
    sys.variables = {Source{1, 0}, Source{2, 0}};
    sys.equalities.push_back({{Rational(1), Rational(-1)}, Rational(0), "a1 = a2"});
    sys.equalities.push_back({{Rational(1), Rational(-1)}, Rational(1), "a1 = a2 + 1"});
    sys.normalization = {{Rational(1), Rational(1)}, Rational(1), "a1 + a2 = 1"};
    CHECK_THROWS_AS(solve(sys), InconsistentSystem);
  }

  TEST_CASE("every family forces a nonzero relation") {
    const std::size_t counts[] = {1, 3, 4, 6, 8, 10};
    for (int n = 1; n <= 6; ++n) {
      CAPTURE(n);
      const auto scenarios = enumerate_scenarios(n);
      CHECK(scenarios.size() == counts[n - 1]);
      const int pieces = n == 1 ? 2 : 2 * n - 1;
      for (const auto& s : scenarios) {
        CAPTURE(s.name);
        s.validate();
        CHECK(s.piece_count == pieces);
        const Dependence d = analyze(derive_constraints(s), Shifts::symbolic(pieces));
        CHECK(d.relation.nonzero());
        check_relation_holds(d);
      }
    }
    const auto four = enumerate_scenarios(4);
    CHECK(four[0].name == "chain");
    CHECK(four[1].name == "merge k=1");
    CHECK(four[5].name == "return k=3");
  }

  TEST_CASE("shape coverage") {
    const std::size_t shapes[] = {3, 8, 15, 24, 35};
    const std::size_t uncovered[] = {0, 4, 9, 16, 25};
    for (int n = 2; n <= 6; ++n) {
      CAPTURE(n);
      const CoverageReport c = coverage(n, n <= 3 ? 10'000'000 : 0);
      CHECK(c.shapes.size() == shapes[n - 2]);
      CHECK(c.uncovered.size() == uncovered[n - 2]);
      CHECK(c.brute_forced == (n <= 3));
      CHECK(c.brute_force_agrees);
      for (const auto& u : c.uncovered) {
        CHECK(u.c > 0);
        CHECK(u.a != u.b);
        const Scenario s = scenario_from_shape(u);
        CHECK(classify(s) == u);
        CHECK(detect_dependence(derive_constraints(s), Shifts::symbolic(s.piece_count)).nonzero());
      }
    }
  }

  TEST_CASE("json report") {
    const auto j = nlohmann::json::parse(scenarios_json(enumerate_scenarios(2)));
    REQUIRE(j.is_array());
    CHECK(j.size() == 3);
    CHECK(j[2]["name"] == "case 3");
  }

  TEST_CASE("birkhoff consistency on a dependent translation") {
    const QPhi phi = QPhi::phi();
    const auto t = build_translation_exchange(QPhi(2) - phi, QPhi(-3) + QPhi(2) * phi, DependencePolicy::Report);
    const MeasureSystem sys = measure_system_from_areas(piece_areas(t.exchange));
    CHECK(solve(sys).dimension() == 1);
    const BirkhoffCheck b = birkhoff_consistency(t.exchange, Point{QPhi(), QPhi()}, 100'000);
    CHECK(b.relation.str() == "2*r + s = 1 in Z");
    CHECK(b.frequencies.size() == 4);
    CHECK(b.distance < 1e-3);
  }
}
