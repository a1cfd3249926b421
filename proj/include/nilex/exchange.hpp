#pragma once

// Piece exchanges over the skew map T_phi(x, y) = (x + 1/phi^2, y + x - 1/(2 phi^3))
// or over a torus translation, their renormalization, and point dynamics.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilex/region.hpp"
#include "nilex/words.hpp"

namespace nilex {

/// (x, y) -> (x + a, y + k x + b). Both T_phi and translations have this form,
/// as does T minus an integer shift.
struct ShearMap {
  QPhi a, k, b;

  Point operator()(const Point& p) const { return {p.x + a, p.y + k * p.x + b}; }
  ShearMap inverse() const;
  /// First *this, then next.
  ShearMap then(const ShearMap& next) const;
  Strip apply(const Strip& s) const;
  Region apply(const Region& r) const;
};

ShearMap t_phi();
ShearMap translation(const QPhi& alpha, const QPhi& beta);

Point apply_T_phi(const Point& p);
Point apply_T_phi_inverse(const Point& p);

/// psi^{-1}(x, y) = (-x/phi, -y - x^2/(2 phi) + x/(2 phi^2)).
Point psi_inverse(const Point& p);
/// psi(x, y) = (-phi x, -y - phi x^2 / 2 - x / (2 phi)).
Point psi(const Point& p);
/// Image of a strip under psi^{-1}: x-interval reversed and scaled, lower and
/// upper bounds swapped together with their strictness.
Strip psi_inverse(const Strip& s);
Region psi_inverse(const Region& r);

enum class BaseMap { TPhi, Translation };

struct Piece {
  int label = 0;
  Region region;
  long n = 0, m = 0;  // integer shift subtracted after the base map
};

struct PieceExchange {
  BaseMap base = BaseMap::TPhi;
  QPhi alpha, beta;  // translation vector when base == Translation
  std::vector<Piece> pieces;
  int level = 1;

  ShearMap base_map() const;
  /// Base map followed by subtraction of piece i's shift.
  ShearMap piece_map(std::size_t i) const;
  std::size_t index_of(int label) const;
  Region domain() const;
};

/// The quadratics p, q, r of the base exchange.
QuadBound base_p();
QuadBound base_q();
QuadBound base_r();
/// 1/(2 phi) + 1/(2 phi^3).
QPhi reference_witness();

enum class BaseReading {
  /// D1 = {p < y <= p+1, y <= min(q, r)}, D2 = {p < y <= p+1, r < y <= r+1}.
  Corrected,
  /// As Corrected with y < q instead of y <= q on the q-branch.
  CorrectedOpenQ,
  /// D1 = {p < y <= p+1, y <= min(q, r-1)}, D2 = {p < y <= p+1, r-1 < y <= r}.
  /// Kept for diagnostics only: its areas are not 1/phi, 1/phi^2.
  Literal,
};

PieceExchange build_base_exchange(BaseReading reading = BaseReading::Corrected);

/// Thrown when a renormalization hypothesis fails.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Set of z with p(D1) in ]z-1, z+1/phi^2] and p(D2) in ]z-1/phi^2, z+1/phi^2[.
struct WitnessInterval {
  QPhi lo, hi;
  bool lo_strict = false;
  bool hi_strict = false;

  bool feasible() const;
  bool contains(const QPhi& z) const;
};
WitnessInterval projection_witness(const PieceExchange& e);

struct RenormOptions {
  /// Also require area(D1 ∩ D2) == 0 before renormalizing.
  bool check_disjoint = false;
};

/// D1' = psi^{-1}(D1 ∪ D2), D2' = T_phi(psi^{-1}(D1)), shifts (0,0) and (1,0).
/// Throws HypothesisError naming the failed condition.
PieceExchange renormalize(const PieceExchange& e, const RenormOptions& opt = {});
/// Level-n exchange obtained from the corrected base exchange.
PieceExchange exchange_at_level(int level, BaseReading reading = BaseReading::Corrected);

/// n alpha + m beta = k with (n, m) != 0, smallest max(|n|, |m|) <= bound.
struct RationalRelation {
  long n = 0, m = 0, k = 0;
};
std::optional<RationalRelation> find_rational_relation(const QPhi& alpha, const QPhi& beta, long bound);

class RationalDependence : public std::invalid_argument {
 public:
  RationalDependence(const std::string& what, RationalRelation r) : std::invalid_argument(what), relation(r) {}
  RationalRelation relation;
};

enum class DependencePolicy { Strict, Report };

struct TranslationBuild {
  PieceExchange exchange;
  std::optional<RationalRelation> relation;  // set only under DependencePolicy::Report
};

/// Four rectangles of [0,1)^2 by the carry pattern of (x + alpha, y + beta):
/// labels 1 (no carry), 2 (x carries), 3 (y carries), 4 (both).
TranslationBuild build_translation_exchange(const QPhi& alpha, const QPhi& beta,
                                            DependencePolicy policy = DependencePolicy::Strict,
                                            long relation_bound = 12);

/// Thrown by locate.
class LocateError : public std::runtime_error {
 public:
  enum class Kind { Outside, Boundary };
  LocateError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
  Kind kind;
};

/// Point location with a floating x-index; membership is decided exactly.
class Locator {
 public:
  explicit Locator(const PieceExchange& e);
  /// Index of the first piece containing p.
  std::size_t locate_index(const Point& p) const;
  int locate(const Point& p) const { return e_->pieces[locate_index(p)].label; }
  /// Orbit coding: n labels, stepping with the located piece's map.
  Word code(Point p, std::size_t n) const;
  Point step(const Point& p) const { return maps_[locate_index(p)](p); }

 private:
  struct Entry {
    double x_lo, x_hi;
    std::size_t piece, strip;
  };
  const PieceExchange* e_;
  std::vector<ShearMap> maps_;
  std::vector<Entry> entries_;  // sorted by x_lo
  std::vector<double> prefix_hi_;
};

int locate(const PieceExchange& e, const Point& p);
Word code_orbit(const PieceExchange& e, const Point& p, std::size_t n);

/// Pseudo-random exact point inside a region: a strip picked with
/// probability proportional to its approximate area, then rational
/// barycentric coordinates with prime denominators 997 and 991.
Point random_point(const Region& r, std::mt19937_64& rng);
Point random_point(const PieceExchange& e, std::mt19937_64& rng);
/// Midpoint of a strip (x at the interval center, y halfway between bounds).
Point strip_midpoint(const Strip& s);

/// Piece areas, in piece order.
std::vector<QPhi> piece_areas(const PieceExchange& e);
/// Total overlap area of distinct pieces.
QPhi overlap_area(const PieceExchange& e);

/// A pair of strips whose regions overlap with positive area after one is
/// moved by a nonzero integer vector.
struct TranslateOverlap {
  std::size_t piece_a, strip_a, piece_b, strip_b;
  long n, m;
};
std::vector<TranslateOverlap> integer_translate_overlaps(const PieceExchange& e);

}  // namespace nilex
