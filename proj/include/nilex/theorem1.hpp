#pragma once

// Transition scenarios for piece exchanges whose complexity grows by less
// than two per step, the measure equalities they force, and the integer
// relation between the mean translations r = sum a_i n_i, s = sum a_i m_i
// that follows. A relation with a nonzero coefficient pair contradicts
// ergodicity when r, s are irrational and independent.
//
// Pieces are numbered 1..P. One piece may refine into two sub-pieces
// (part 1 and part 2); whole pieces have part 0. Shift variables are
// n_i -> index 2(i-1) and m_i -> index 2(i-1)+1 in Polynomial.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilex/exchange.hpp"
#include "nilex/polynomial.hpp"

namespace nilex {

struct Source {
  int piece = 0;
  int part = 0;  // 0 whole piece, 1 or 2 for a sub-piece of the refining piece
  friend auto operator<=>(const Source&, const Source&) = default;
};

struct Transition {
  Source from;
  int to = 0;
};

struct Scenario {
  std::string name;
  int piece_count = 0;
  int refining_piece = 0;  // 0: nothing refines
  std::vector<Transition> transitions;  // empty, or total on sources()

  /// In piece order, the two sub-pieces standing in for the refining piece.
  std::vector<Source> sources() const;
  /// Throws std::invalid_argument when malformed.
  void validate() const;
};

std::string source_name(const Source& s);   // "D2", "D1(1)"
std::string measure_name(const Source& s);  // "a2", "a1(1)"

struct LinearEquation {
  std::vector<Rational> coeff;  // one per variable
  Rational rhs;
  std::string text;  // as derived, e.g. "a2 = a1(1)"
};

struct MeasureSystem {
  std::vector<Source> variables;
  std::vector<LinearEquation> equalities;
  LinearEquation normalization;

  std::string format(const LinearEquation& eq) const;
};

/// Raised when the equalities have no solution; carries the equation whose
/// reduction produced 0 = c with c != 0.
class InconsistentSystem : public std::runtime_error {
 public:
  explicit InconsistentSystem(const std::string& equation)
      : std::runtime_error("inconsistent measure system at: " + equation), equation_(equation) {}
  const std::string& equation() const { return equation_; }

 private:
  std::string equation_;
};

MeasureSystem derive_constraints(const Scenario& s);

/// particular + span(directions). Directions are primitive integer vectors
/// whose last nonzero entry is positive.
struct AffineSolution {
  std::vector<Rational> particular;
  std::vector<std::vector<Rational>> directions;
  std::size_t dimension() const { return directions.size(); }
};
AffineSolution solve(const MeasureSystem& sys);

/// Some solution with every measure > 0 exists. nullopt when the solution
/// set has dimension >= 2 (not decided).
std::optional<bool> has_positive_solution(const MeasureSystem& sys);

/// Shift assignment: symbolic (polynomial variables) or concrete constants.
struct Shifts {
  std::vector<Polynomial> n, m;  // index piece-1
  static Shifts symbolic(int piece_count);
  static Shifts concrete(const std::vector<long>& n, const std::vector<long>& m);
};

std::string shift_variable_name(int index);  // "n1", "m1", "n2", ...

struct IntegerRelation {
  enum class Kind {
    Line,     // one free measure eliminated: coeff_r r + coeff_s s = constant
    Rigid,    // measures determined: D r = constant
    Trivial,  // the free direction moves neither r nor s: D r = constant
    None,     // solution set too large, nothing forced
  };
  Kind kind = Kind::None;
  Polynomial coeff_r, coeff_s, constant;

  bool nonzero() const { return !(coeff_r.is_zero() && coeff_s.is_zero()); }
  std::string str() const;  // "(m2 - m1)*r - (n2 - n1)*s = ... in Z"
};

struct Dependence {
  AffineSolution solution;
  Polynomial r0, s0;              // r, s at the particular solution
  std::vector<Polynomial> dr, ds;  // change of r, s along each direction
  IntegerRelation relation;
};

Dependence analyze(const MeasureSystem& sys, const Shifts& shifts);
IntegerRelation detect_dependence(const MeasureSystem& sys, const Shifts& shifts);

/// Scenario families of the induction step n (pieces after the previous
/// refinement: 2 for n = 1, 2n-1 for n >= 2).
std::vector<Scenario> enumerate_scenarios(int n);

/// Shape of a strongly connected scenario with a refining piece 1: the
/// sub-piece chains have a and b private pieces and share c pieces before
/// returning to piece 1. Canonical with a <= b.
struct MergeShape {
  int a = 0, b = 0, c = 0;
  friend auto operator<=>(const MergeShape&, const MergeShape&) = default;
};
std::string shape_name(const MergeShape& s);

/// nullopt unless piece 1 refines and every piece is reachable both ways.
std::optional<MergeShape> classify(const Scenario& s);
Scenario scenario_from_shape(const MergeShape& shape, const std::string& name = {});
/// Every admissible shape for step n >= 2.
std::vector<MergeShape> all_shapes(int n);

struct CoverageReport {
  int n = 0;
  std::map<MergeShape, long> raw_counts;  // filled only by brute force
  std::vector<MergeShape> shapes;         // all admissible shapes
  std::vector<MergeShape> covered;        // reached by enumerate_scenarios(n)
  std::vector<MergeShape> uncovered;      // flagged
  bool brute_forced = false;
  bool brute_force_agrees = true;         // raw maps produce exactly `shapes`
};
/// Brute force over every transition map when pieces^(pieces+1) <= limit.
CoverageReport coverage(int n, long brute_force_limit = 10'000'000);

std::string scenario_report(const Scenario& s);
/// JSON array, one object per scenario.
std::string scenarios_json(const std::vector<Scenario>& scenarios);

/// Measure system whose solution set is the Q-affine line through the given
/// areas in Q(phi): equalities are the rational relations they satisfy.
MeasureSystem measure_system_from_areas(const std::vector<QPhi>& areas);

struct BirkhoffCheck {
  IntegerRelation relation;
  std::vector<double> frequencies;
  double r = 0, s = 0;  // estimated from frequencies
  double value = 0;     // coeff_r r + coeff_s s
  double distance = 0;  // to the nearest integer
};
BirkhoffCheck birkhoff_consistency(const PieceExchange& e, const Point& start, std::size_t steps);

}  // namespace nilex
