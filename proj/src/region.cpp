#include "nilex/region.hpp"

#include <algorithm>
#include <limits>
#include <optional>

namespace nilex {

Approx QuadBound::operator()(const Approx& x) const {
  return (approx(c2) * x + approx(c1)) * x + approx(c0);
}

QuadBound operator+(const QuadBound& f, const QuadBound& g) { return {f.c2 + g.c2, f.c1 + g.c1, f.c0 + g.c0}; }
QuadBound operator-(const QuadBound& f, const QuadBound& g) { return {f.c2 - g.c2, f.c1 - g.c1, f.c0 - g.c0}; }
QuadBound constant_bound(const QPhi& c) { return {QPhi(), QPhi(), c}; }

namespace {

// sign(y - f(x)), filtered.
int side(const QuadBound& f, const QPhi& x, const QPhi& y) {
  const Approx d = approx(y) - f(approx(x));
  if (int s = d.sure_sign()) return s;
  return sign(y - f(x));
}

bool lt(const QPhi& a, const QPhi& b) { return a < b; }

std::optional<Interval> meet(const Interval& a, const Interval& b) {
  Interval r;
  const auto lo = a.lo <=> b.lo;
  if (lo == 0) {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed && b.lo_closed;
  } else if (lo > 0) {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed;
  } else {
    r.lo = b.lo;
    r.lo_closed = b.lo_closed;
  }
  const auto hi = a.hi <=> b.hi;
  if (hi == 0) {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed && b.hi_closed;
  } else if (hi < 0) {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed;
  } else {
    r.hi = b.hi;
    r.hi_closed = b.hi_closed;
  }
  if (!(r.lo < r.hi)) return std::nullopt;
  return r;
}

Bound flipped(const Bound& b) { return {b.f, !b.strict}; }

struct Active {
  std::size_t index;
  QPhi value;
  bool strict;
};

// Extremal bound at x: the largest lower (want_max) or smallest upper. Ties
// between bounds agreeing at x combine their strictness.
Active extremal(const std::vector<Bound>& bs, const QPhi& x, bool want_max) {
  Active best{0, bs[0].f(x), bs[0].strict};
  for (std::size_t i = 1; i < bs.size(); ++i) {
    QPhi v = bs[i].f(x);
    const auto c = v <=> best.value;
    if (c == 0) {
      best.strict = best.strict || bs[i].strict;
    } else if ((c > 0) == want_max) {
      best = {i, std::move(v), bs[i].strict};
    }
  }
  return best;
}

void check_leading(const std::vector<Bound>& a, const std::vector<Bound>& b) {
  const QPhi* c2 = nullptr;
  for (const auto* v : {&a, &b}) {
    for (const auto& bd : *v) {
      if (!c2) {
        c2 = &bd.f.c2;
      } else if (bd.f.c2 != *c2) {
        throw LeadingCoefficientMismatch();
      }
    }
  }
}

}  // namespace

Membership Strip::classify(const Point& p) const {
  const int sl = sign(p.x - x.lo);
  const int sh = sign(x.hi - p.x);
  if (sl < 0 || sh < 0) return Membership::Outside;
  const int yl = side(lower.f, p.x, p.y);
  const int yu = -side(upper.f, p.x, p.y);
  if (yl < 0 || yu < 0) return Membership::Outside;
  const bool x_ok = (sl > 0 || x.lo_closed) && (sh > 0 || x.hi_closed);
  const bool y_ok = (yl > 0 || !lower.strict) && (yu > 0 || !upper.strict);
  return x_ok && y_ok ? Membership::Inside : Membership::Boundary;
}

Region clip(const Interval& xs, const std::vector<Bound>& lowers, const std::vector<Bound>& uppers) {
  if (lowers.empty() || uppers.empty()) throw std::invalid_argument("clip needs a lower and an upper bound");
  check_leading(lowers, uppers);
  if (!(xs.lo < xs.hi)) return {};

  std::vector<QPhi> pts;
  std::vector<const QuadBound*> all;
  for (const auto& b : lowers) all.push_back(&b.f);
  for (const auto& b : uppers) all.push_back(&b.f);
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      const QPhi d1 = all[i]->c1 - all[j]->c1;
      if (d1.is_zero()) continue;
      QPhi r = -(all[i]->c0 - all[j]->c0) / d1;
      if (xs.lo < r && r < xs.hi) pts.push_back(std::move(r));
    }
  }
  std::sort(pts.begin(), pts.end(), lt);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  pts.insert(pts.begin(), xs.lo);
  pts.push_back(xs.hi);

  const std::size_t k = pts.size() - 1;  // number of open sub-intervals
  std::vector<std::optional<Strip>> piece(k);
  for (std::size_t i = 0; i < k; ++i) {
    const QPhi m = (pts[i] + pts[i + 1]) / QPhi(2);
    const Active lo = extremal(lowers, m, true);
    const Active hi = extremal(uppers, m, false);
    if (!(lo.value < hi.value)) continue;
    piece[i] = Strip{Interval{pts[i], pts[i + 1], false, false}, Bound{lowers[lo.index].f, lo.strict},
                     Bound{uppers[hi.index].f, hi.strict}};
  }

  std::vector<bool> attached(k + 1, false);
  for (std::size_t i = 0; i <= k; ++i) {
    const bool include = i == 0 ? xs.lo_closed : (i == k ? xs.hi_closed : true);
    if (!include) continue;
    const QPhi& x = pts[i];
    const Active lo = extremal(lowers, x, true);
    const Active hi = extremal(uppers, x, false);
    const auto c = lo.value <=> hi.value;
    if (c > 0 || (c == 0 && (lo.strict || hi.strict))) continue;
    auto fits = [&](const Strip& s) {
      return s.lower.strict == lo.strict && s.upper.strict == hi.strict && s.lower.f(x) == lo.value &&
             s.upper.f(x) == hi.value;
    };
    if (i > 0 && piece[i - 1] && fits(*piece[i - 1])) {
      piece[i - 1]->x.hi_closed = true;
      attached[i] = true;
    } else if (i < k && piece[i] && fits(*piece[i])) {
      piece[i]->x.lo_closed = true;
      attached[i] = true;
    }
  }

  Region out;
  for (std::size_t i = 0; i < k; ++i) {
    if (!piece[i]) continue;
    Strip& s = *piece[i];
    if (!out.strips.empty() && attached[i] && piece[i - 1]) {
      Strip& prev = out.strips.back();
      if (prev.lower == s.lower && prev.upper == s.upper && prev.x.hi == s.x.lo) {
        prev.x.hi = s.x.hi;
        prev.x.hi_closed = s.x.hi_closed;
        continue;
      }
    }
    out.strips.push_back(std::move(s));
  }
  return out;
}

Region intersect(const Strip& a, const Strip& b) {
  auto iv = meet(a.x, b.x);
  if (!iv) return {};
  return clip(*iv, {a.lower, b.lower}, {a.upper, b.upper});
}

Region subtract(const Strip& a, const Strip& b) {
  Region out;
  if (b.x.lo > a.x.lo) {
    if (auto iv = meet(a.x, Interval{a.x.lo, b.x.lo, a.x.lo_closed, !b.x.lo_closed}))
      out.strips.push_back(Strip{*iv, a.lower, a.upper});
  }
  if (auto mid = meet(a.x, b.x)) {
    for (auto& s : clip(*mid, {a.lower}, {a.upper, flipped(b.lower)}).strips) out.strips.push_back(std::move(s));
    for (auto& s : clip(*mid, {a.lower, flipped(b.upper)}, {a.upper}).strips) out.strips.push_back(std::move(s));
  }
  if (b.x.hi < a.x.hi) {
    if (auto iv = meet(a.x, Interval{b.x.hi, a.x.hi, !b.x.hi_closed, a.x.hi_closed}))
      out.strips.push_back(Strip{*iv, a.lower, a.upper});
  }
  return out;
}

Box bounding_box(const Strip& s) {
  const Approx lo = approx(s.x.lo), hi = approx(s.x.hi);
  double ylo = std::min(s.lower.f(lo).lo(), s.lower.f(hi).lo());
  double yhi = std::max(s.upper.f(lo).hi(), s.upper.f(hi).hi());
  auto vertex = [&](const QuadBound& f) -> std::optional<Approx> {
    if (f.c2.is_zero()) return std::nullopt;
    QPhi v = -f.c1 / (QPhi(2) * f.c2);
    if (!(s.x.lo < v && v < s.x.hi)) return std::nullopt;
    return approx(f(v));
  };
  if (auto v = vertex(s.lower.f)) ylo = std::min(ylo, v->lo());
  if (auto v = vertex(s.upper.f)) yhi = std::max(yhi, v->hi());
  return {lo.lo(), hi.hi(), ylo, yhi};
}

namespace {

struct Indexed {
  std::vector<Box> box;
  std::vector<std::size_t> order;  // by box.x_lo
  std::vector<double> prefix_hi;   // max x_hi over order[0..i]

  explicit Indexed(const Region& r) {
    box.reserve(r.strips.size());
    for (const auto& s : r.strips) box.push_back(bounding_box(s));
    order.resize(box.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return box[a].x_lo < box[b].x_lo || (box[a].x_lo == box[b].x_lo && a < b);
    });
    prefix_hi.resize(order.size());
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < order.size(); ++i) prefix_hi[i] = m = std::max(m, box[order[i]].x_hi);
  }

  // Indices whose boxes overlap q, in ascending index order.
  std::vector<std::size_t> query(const Box& q) const {
    std::vector<std::size_t> hits;
    auto it = std::upper_bound(order.begin(), order.end(), q.x_hi,
                               [&](double v, std::size_t i) { return v < box[i].x_lo; });
    for (std::ptrdiff_t k = (it - order.begin()) - 1; k >= 0; --k) {
      if (prefix_hi[k] < q.x_lo) break;
      if (box[order[k]].overlaps(q)) hits.push_back(order[k]);
    }
    std::sort(hits.begin(), hits.end());
    return hits;
  }
};

}  // namespace

Region intersect(const Region& a, const Region& b) {
  Region out;
  if (a.empty() || b.empty()) return out;
  const Indexed ib(b);
  for (const auto& sa : a.strips) {
    for (std::size_t j : ib.query(bounding_box(sa))) {
      for (auto& s : intersect(sa, b.strips[j]).strips) out.strips.push_back(std::move(s));
    }
  }
  return out;
}

Region subtract(const Region& a, const Region& b) {
  std::vector<Strip> cur = a.strips;
  std::vector<Box> boxes;
  for (const auto& s : cur) boxes.push_back(bounding_box(s));
  for (const auto& sb : b.strips) {
    const Box bb = bounding_box(sb);
    std::vector<Strip> next;
    std::vector<Box> next_boxes;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (!boxes[i].overlaps(bb)) {
        next.push_back(std::move(cur[i]));
        next_boxes.push_back(boxes[i]);
        continue;
      }
      for (auto& s : subtract(cur[i], sb).strips) {
        next_boxes.push_back(bounding_box(s));
        next.push_back(std::move(s));
      }
    }
    cur = std::move(next);
    boxes = std::move(next_boxes);
  }
  return Region{std::move(cur)};
}

Region unite(const Region& a, const Region& b) {
  Region out = a;
  out.strips.insert(out.strips.end(), b.strips.begin(), b.strips.end());
  return out;
}

QPhi area(const Strip& s) {
  const QuadBound d = s.upper.f - s.lower.f;
  const QPhi& lo = s.x.lo;
  const QPhi& hi = s.x.hi;
  const QPhi lo2 = lo * lo, hi2 = hi * hi;
  QPhi out = d.c0 * (hi - lo);
  if (!d.c1.is_zero()) out += d.c1 * (hi2 - lo2) / QPhi(2);
  if (!d.c2.is_zero()) out += d.c2 * (hi2 * hi - lo2 * lo) / QPhi(3);
  return out;
}

QPhi area(const Region& r) {
  QPhi total;
  for (const auto& s : r.strips) total += area(s);
  return total;
}

bool included(const Region& a, const Region& b) { return area(a) == area(intersect(a, b)); }

Interval x_extent(const Region& r) {
  if (r.empty()) throw std::invalid_argument("extent of an empty region");
  Interval out = r.strips.front().x;
  for (const auto& s : r.strips) {
    const auto lo = s.x.lo <=> out.lo;
    if (lo < 0) {
      out.lo = s.x.lo;
      out.lo_closed = s.x.lo_closed;
    } else if (lo == 0) {
      out.lo_closed = out.lo_closed || s.x.lo_closed;
    }
    const auto hi = s.x.hi <=> out.hi;
    if (hi > 0) {
      out.hi = s.x.hi;
      out.hi_closed = s.x.hi_closed;
    } else if (hi == 0) {
      out.hi_closed = out.hi_closed || s.x.hi_closed;
    }
  }
  return out;
}

QPhi y_extent_bound(const Region& r) {
  QPhi best;
  auto see = [&](const QPhi& v) {
    QPhi a = abs(v);
    if (a > best) best = std::move(a);
  };
  for (const auto& s : r.strips) {
    for (const QuadBound* f : {&s.lower.f, &s.upper.f}) {
      see((*f)(s.x.lo));
      see((*f)(s.x.hi));
      if (!f->c2.is_zero()) {
        const QPhi v = -f->c1 / (QPhi(2) * f->c2);
        if (s.x.lo < v && v < s.x.hi) see((*f)(v));
      }
    }
  }
  return best;
}

QPhi common_leading_coefficient(const Region& r) {
  if (r.empty()) throw std::invalid_argument("empty region has no leading coefficient");
  const QPhi& c2 = r.strips.front().lower.f.c2;
  for (const auto& s : r.strips) {
    if (s.lower.f.c2 != c2 || s.upper.f.c2 != c2) throw LeadingCoefficientMismatch();
  }
  return c2;
}

}  // namespace nilex
