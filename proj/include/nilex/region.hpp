#pragma once

// Planar regions bounded by quadratic graphs over x-intervals, with exact
// intersection, difference and area.

#include <stdexcept>
#include <vector>

#include "nilex/qphi.hpp"

namespace nilex {

struct Point {
  QPhi x, y;
  friend bool operator==(const Point&, const Point&) = default;
};

/// x -> c2 x^2 + c1 x + c0.
struct QuadBound {
  QPhi c2, c1, c0;

  QPhi operator()(const QPhi& x) const { return (c2 * x + c1) * x + c0; }
  Approx operator()(const Approx& x) const;

  friend bool operator==(const QuadBound&, const QuadBound&) = default;
};

QuadBound operator+(const QuadBound& f, const QuadBound& g);
QuadBound operator-(const QuadBound& f, const QuadBound& g);
QuadBound constant_bound(const QPhi& c);

/// As a lower bound: y > f (strict) or y >= f. As an upper bound: y < f or y <= f.
struct Bound {
  QuadBound f;
  bool strict = false;
  friend bool operator==(const Bound&, const Bound&) = default;
};

struct Interval {
  QPhi lo, hi;
  bool lo_closed = false;
  bool hi_closed = false;
  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class Membership { Outside, Boundary, Inside };

struct Strip {
  Interval x;
  Bound lower, upper;

  Membership classify(const Point& p) const;
  bool contains(const Point& p) const { return classify(p) == Membership::Inside; }
  friend bool operator==(const Strip&, const Strip&) = default;
};

struct Region {
  std::vector<Strip> strips;
  bool empty() const { return strips.empty(); }
};

/// Thrown when bounds with different leading coefficients meet.
class LeadingCoefficientMismatch : public std::logic_error {
 public:
  LeadingCoefficientMismatch() : std::logic_error("leading coefficient mismatch in region algebra") {}
};

/// {(x,y) : x in xs, y above every lower bound, below every upper bound} as
/// disjoint strips. Measure-zero slivers are dropped; vertical boundary
/// segments are kept when they fit an adjacent strip's flags.
Region clip(const Interval& xs, const std::vector<Bound>& lowers, const std::vector<Bound>& uppers);

Region intersect(const Strip& a, const Strip& b);
Region subtract(const Strip& a, const Strip& b);
Region intersect(const Region& a, const Region& b);
Region subtract(const Region& a, const Region& b);
Region unite(const Region& a, const Region& b);  // concatenation; caller keeps them disjoint

QPhi area(const Strip& s);
QPhi area(const Region& r);
/// area(a \ b) == 0, evaluated as area(a) - area(a ∩ b) for b with
/// pairwise area-disjoint strips.
bool included(const Region& a, const Region& b);

/// Hull of the strip x-intervals.
Interval x_extent(const Region& r);
/// max |bound| over strips, at interval endpoints and at interior vertices.
QPhi y_extent_bound(const Region& r);

/// Conservative floating bounding box.
struct Box {
  double x_lo, x_hi, y_lo, y_hi;
  bool overlaps(const Box& o) const {
    return x_lo <= o.x_hi && o.x_lo <= x_hi && y_lo <= o.y_hi && o.y_lo <= y_hi;
  }
};
Box bounding_box(const Strip& s);

/// Every bound in the region shares this leading coefficient; throws
/// LeadingCoefficientMismatch otherwise, std::invalid_argument when empty.
QPhi common_leading_coefficient(const Region& r);

}  // namespace nilex
