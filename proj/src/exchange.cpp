#include "nilex/exchange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nilex {

namespace {

const QPhi& phi() {
  static const QPhi v = QPhi::phi();
  return v;
}

// 1/(2 phi^3) = phi - 3/2.
const QPhi& half_inv_phi3() {
  static const QPhi v = phi_power(-3) / QPhi(2);
  return v;
}

}  // namespace

ShearMap ShearMap::inverse() const { return {-a, -k, k * a - b}; }

ShearMap ShearMap::then(const ShearMap& next) const {
  return {a + next.a, k + next.k, b + next.k * a + next.b};
}

Strip ShearMap::apply(const Strip& s) const {
  // g(X) = f(X - a) + k (X - a) + b
  auto move = [&](const QuadBound& f) {
    QuadBound g;
    g.c2 = f.c2;
    g.c1 = f.c1 - QPhi(2) * a * f.c2 + k;
    g.c0 = (f.c2 * a - f.c1) * a + f.c0 - k * a + b;
    return g;
  };
  Strip out = s;
  out.x.lo = s.x.lo + a;
  out.x.hi = s.x.hi + a;
  out.lower.f = move(s.lower.f);
  out.upper.f = move(s.upper.f);
  return out;
}

Region ShearMap::apply(const Region& r) const {
  Region out;
  out.strips.reserve(r.strips.size());
  for (const auto& s : r.strips) out.strips.push_back(apply(s));
  return out;
}

ShearMap t_phi() { return {phi_power(-2), QPhi(1), -half_inv_phi3()}; }
ShearMap translation(const QPhi& alpha, const QPhi& beta) { return {alpha, QPhi(), beta}; }

Point apply_T_phi(const Point& p) { return t_phi()(p); }
Point apply_T_phi_inverse(const Point& p) { return t_phi().inverse()(p); }

Point psi_inverse(const Point& p) {
  static const QPhi inv_phi = phi_power(-1);
  static const QPhi half_inv_phi = phi_power(-1) / QPhi(2);
  static const QPhi half_inv_phi2 = phi_power(-2) / QPhi(2);
  return {-p.x * inv_phi, -p.y - (half_inv_phi * p.x - half_inv_phi2) * p.x};
}

Point psi(const Point& p) {
  static const QPhi half_phi = phi() / QPhi(2);
  static const QPhi half_inv_phi = phi_power(-1) / QPhi(2);
  return {-phi() * p.x, -p.y - (half_phi * p.x + half_inv_phi) * p.x};
}

Strip psi_inverse(const Strip& s) {
  static const QPhi phi2 = phi_power(2);
  static const QPhi inv_phi = phi_power(-1);
  static const QPhi half_phi = phi() / QPhi(2);
  static const QPhi half_inv_phi = phi_power(-1) / QPhi(2);
  // y > f(x) becomes Y < g(X) with g(X) = -f(-phi X) - phi X^2/2 - X/(2 phi).
  auto image = [&](const QuadBound& f) {
    return QuadBound{-phi2 * f.c2 - half_phi, phi() * f.c1 - half_inv_phi, -f.c0};
  };
  Strip out;
  out.x.lo = -s.x.hi * inv_phi;
  out.x.hi = -s.x.lo * inv_phi;
  out.x.lo_closed = s.x.hi_closed;
  out.x.hi_closed = s.x.lo_closed;
  out.lower = Bound{image(s.upper.f), s.upper.strict};
  out.upper = Bound{image(s.lower.f), s.lower.strict};
  return out;
}

Region psi_inverse(const Region& r) {
  Region out;
  out.strips.reserve(r.strips.size());
  for (const auto& s : r.strips) out.strips.push_back(psi_inverse(s));
  return out;
}

ShearMap PieceExchange::base_map() const {
  return base == BaseMap::TPhi ? t_phi() : translation(alpha, beta);
}

ShearMap PieceExchange::piece_map(std::size_t i) const {
  ShearMap m = base_map();
  m.a -= QPhi(pieces.at(i).n);
  m.b -= QPhi(pieces.at(i).m);
  return m;
}

std::size_t PieceExchange::index_of(int label) const {
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].label == label) return i;
  }
  throw std::out_of_range("no piece labeled " + std::to_string(label));
}

Region PieceExchange::domain() const {
  Region out;
  for (const auto& p : pieces) out = unite(out, p.region);
  return out;
}

QuadBound base_p() {
  return {phi_power(2) / QPhi(2), -phi() / QPhi(2), -phi_power(-1)};
}

QuadBound base_q() {
  return base_p() + QuadBound{QPhi(), phi_power(2), QPhi(Rational(3, 2))};
}

QuadBound base_r() {
  return base_p() + QuadBound{QPhi(), -phi_power(2), QPhi(1) + half_inv_phi3()};
}

QPhi reference_witness() { return phi_power(-1) / QPhi(2) + phi_power(-3) / QPhi(2); }

PieceExchange build_base_exchange(BaseReading reading) {
  const QuadBound p = base_p(), q = base_q(), r = base_r();
  const QuadBound one = constant_bound(QPhi(1));
  // Wide enough to contain both supports; the clip finds the true ends.
  const Interval xs{QPhi(-4), QPhi(4), false, false};
  Region d1, d2;
  switch (reading) {
    case BaseReading::Corrected:
    case BaseReading::CorrectedOpenQ: {
      const bool open_q = reading == BaseReading::CorrectedOpenQ;
      d1 = clip(xs, {Bound{p, true}}, {Bound{p + one, false}, Bound{q, open_q}, Bound{r, false}});
      d2 = clip(xs, {Bound{p, true}, Bound{r, true}}, {Bound{p + one, false}, Bound{r + one, false}});
      break;
    }
    case BaseReading::Literal:
      d1 = clip(xs, {Bound{p, true}}, {Bound{p + one, false}, Bound{q, false}, Bound{r - one, false}});
      d2 = clip(xs, {Bound{p, true}, Bound{r - one, true}}, {Bound{p + one, false}, Bound{r, false}});
      break;
  }
  PieceExchange e;
  e.base = BaseMap::TPhi;
  e.level = 1;
  e.pieces.push_back(Piece{1, std::move(d1), 0, 0});
  e.pieces.push_back(Piece{2, std::move(d2), 1, 0});
  return e;
}

bool WitnessInterval::feasible() const {
  const auto c = lo <=> hi;
  return c < 0 || (c == 0 && !lo_strict && !hi_strict);
}

bool WitnessInterval::contains(const QPhi& z) const {
  const auto a = z <=> lo;
  const auto b = z <=> hi;
  return (a > 0 || (a == 0 && !lo_strict)) && (b < 0 || (b == 0 && !hi_strict));
}

WitnessInterval projection_witness(const PieceExchange& e) {
  if (e.pieces.size() != 2) throw std::invalid_argument("projection witness needs two pieces");
  const QPhi s = phi_power(-2);
  const Interval i1 = x_extent(e.pieces[0].region);
  const Interval i2 = x_extent(e.pieces[1].region);
  struct Side {
    QPhi v;
    bool strict;
  };
  // Lower limits on z come from the right ends, upper limits from the left ends.
  const Side lows[2] = {{i1.hi - s, false}, {i2.hi - s, i2.hi_closed}};
  const Side highs[2] = {{i1.lo + QPhi(1), i1.lo_closed}, {i2.lo + s, i2.lo_closed}};
  WitnessInterval w;
  auto pick = [](const Side& a, const Side& b, bool want_max) {
    const auto c = a.v <=> b.v;
    if (c == 0) return Side{a.v, a.strict || b.strict};
    return ((c > 0) == want_max) ? a : b;
  };
  const Side lo = pick(lows[0], lows[1], true);
  const Side hi = pick(highs[0], highs[1], false);
  w.lo = lo.v;
  w.lo_strict = lo.strict;
  w.hi = hi.v;
  w.hi_strict = hi.strict;
  return w;
}

PieceExchange renormalize(const PieceExchange& e, const RenormOptions& opt) {
  if (e.base != BaseMap::TPhi || e.pieces.size() != 2 || e.pieces[0].n != 0 || e.pieces[0].m != 0 ||
      e.pieces[1].n != 1 || e.pieces[1].m != 0) {
    throw HypothesisError("renormalization needs a two-piece T_phi exchange with shifts (0,0), (1,0)");
  }
  const WitnessInterval w = projection_witness(e);
  if (!w.feasible()) {
    throw HypothesisError("projection hypothesis fails at level " + std::to_string(e.level) +
                          ": no z with p(D1) in ]z-1, z+1/phi^2] and p(D2) in ]z-1/phi^2, z+1/phi^2[ (need z >= " +
                          to_decimal(w.lo, 12) + " and z <= " + to_decimal(w.hi, 12) + ")");
  }
  if (opt.check_disjoint) {
    const QPhi ov = overlap_area(e);
    if (!ov.is_zero())
      throw HypothesisError("disjointness fails at level " + std::to_string(e.level) + ": overlap area " +
                            to_string(ov));
  }
  const Region a1 = psi_inverse(e.pieces[0].region);
  const Region a2 = psi_inverse(e.pieces[1].region);
  PieceExchange out;
  out.base = BaseMap::TPhi;
  out.level = e.level + 1;
  out.pieces.push_back(Piece{1, unite(a1, a2), 0, 0});
  out.pieces.push_back(Piece{2, t_phi().apply(a1), 1, 0});
  return out;
}

PieceExchange exchange_at_level(int level, BaseReading reading) {
  if (level < 1) throw std::invalid_argument("level must be >= 1");
  PieceExchange e = build_base_exchange(reading);
  while (e.level < level) e = renormalize(e);
  return e;
}

std::optional<RationalRelation> find_rational_relation(const QPhi& alpha, const QPhi& beta, long bound) {
  const Rational &a1 = alpha.rational_part(), &b1 = alpha.phi_part();
  const Rational &a2 = beta.rational_part(), &b2 = beta.phi_part();
  for (long s = 1; s <= bound; ++s) {
    for (long n = 0; n <= s; ++n) {
      for (long m = -s; m <= s; ++m) {
        if (std::max(n, std::labs(m)) != s) continue;
        if (n == 0 && m <= 0) continue;  // one representative per sign class
        if (!(Rational(n) * b1 + Rational(m) * b2).is_zero()) continue;
        const Rational v = Rational(n) * a1 + Rational(m) * a2;
        if (v.is_integer()) return RationalRelation{n, m, v.numerator().get_si()};
      }
    }
  }
  return std::nullopt;
}

TranslationBuild build_translation_exchange(const QPhi& alpha, const QPhi& beta, DependencePolicy policy,
                                            long relation_bound) {
  const QPhi zero, one(1);
  if (!(zero < alpha && alpha < one && zero < beta && beta < one))
    throw std::invalid_argument("translation parameters must lie in (0, 1)");
  TranslationBuild out;
  if (auto rel = find_rational_relation(alpha, beta, relation_bound)) {
    const std::string msg = "rational dependence: " + std::to_string(rel->n) + "*alpha + " +
                            std::to_string(rel->m) + "*beta = " + std::to_string(rel->k);
    if (policy == DependencePolicy::Strict) throw RationalDependence(msg, *rel);
    out.relation = rel;
  }
  const QPhi xc = one - alpha, yc = one - beta;
  auto rect = [](const QPhi& x0, const QPhi& x1, const QPhi& y0, const QPhi& y1) {
    return Region{{Strip{Interval{x0, x1, true, false}, Bound{constant_bound(y0), false},
                         Bound{constant_bound(y1), true}}}};
  };
  PieceExchange& e = out.exchange;
  e.base = BaseMap::Translation;
  e.alpha = alpha;
  e.beta = beta;
  e.level = 1;
  e.pieces.push_back(Piece{1, rect(zero, xc, zero, yc), 0, 0});
  e.pieces.push_back(Piece{2, rect(xc, one, zero, yc), 1, 0});
  e.pieces.push_back(Piece{3, rect(zero, xc, yc, one), 0, 1});
  e.pieces.push_back(Piece{4, rect(xc, one, yc, one), 1, 1});
  return out;
}

// ---------------------------------------------------------------------------

namespace {

int decide(const Approx& d, const QPhi& exact_lhs, const QPhi& exact_rhs) {
  if (int s = d.sure_sign()) return s;
  return sign(exact_lhs - exact_rhs);
}

}  // namespace

Locator::Locator(const PieceExchange& e) : e_(&e) {
  for (std::size_t i = 0; i < e.pieces.size(); ++i) {
    maps_.push_back(e.piece_map(i));
    const auto& strips = e.pieces[i].region.strips;
    for (std::size_t j = 0; j < strips.size(); ++j) {
      entries_.push_back(Entry{approx(strips[j].x.lo).lo(), approx(strips[j].x.hi).hi(), i, j});
    }
  }
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
    if (a.x_lo != b.x_lo) return a.x_lo < b.x_lo;
    return a.piece != b.piece ? a.piece < b.piece : a.strip < b.strip;
  });
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& en : entries_) prefix_hi_.push_back(m = std::max(m, en.x_hi));
}

std::size_t Locator::locate_index(const Point& p) const {
  const Approx ax = approx(p.x), ay = approx(p.y);
  std::vector<const Entry*> cands;
  auto it = std::upper_bound(entries_.begin(), entries_.end(), ax.hi(),
                             [](double v, const Entry& en) { return v < en.x_lo; });
  for (std::ptrdiff_t k = (it - entries_.begin()) - 1; k >= 0; --k) {
    if (prefix_hi_[k] < ax.lo()) break;
    if (entries_[k].x_hi >= ax.lo()) cands.push_back(&entries_[k]);
  }
  std::sort(cands.begin(), cands.end(), [](const Entry* a, const Entry* b) {
    return a->piece != b->piece ? a->piece < b->piece : a->strip < b->strip;
  });
  bool boundary = false;
  for (const Entry* en : cands) {
    const Strip& s = e_->pieces[en->piece].region.strips[en->strip];
    const int sl = decide(ax - approx(s.x.lo), p.x, s.x.lo);
    if (sl < 0) continue;
    const int sh = decide(approx(s.x.hi) - ax, s.x.hi, p.x);
    if (sh < 0) continue;
    const int yl = decide(ay - s.lower.f(ax), p.y, s.lower.f(p.x));
    if (yl < 0) continue;
    const int yu = decide(s.upper.f(ax) - ay, s.upper.f(p.x), p.y);
    if (yu < 0) continue;
    const bool x_ok = (sl > 0 || s.x.lo_closed) && (sh > 0 || s.x.hi_closed);
    const bool y_ok = (yl > 0 || !s.lower.strict) && (yu > 0 || !s.upper.strict);
    if (x_ok && y_ok) return en->piece;
    boundary = true;
  }
  if (boundary) throw LocateError(LocateError::Kind::Boundary, "boundary point (" + to_string(p.x) + ", " + to_string(p.y) + ")");
  throw LocateError(LocateError::Kind::Outside, "point outside D (" + to_string(p.x) + ", " + to_string(p.y) + ")");
}

Word Locator::code(Point p, std::size_t n) const {
  Word w;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = locate_index(p);
    w.push_back(static_cast<std::uint8_t>(e_->pieces[k].label));
    p = maps_[k](p);
  }
  return w;
}

int locate(const PieceExchange& e, const Point& p) { return Locator(e).locate(p); }

Word code_orbit(const PieceExchange& e, const Point& p, std::size_t n) { return Locator(e).code(p, n); }

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Point random_point(const Region& r, std::mt19937_64& rng) {
  if (r.empty()) throw std::invalid_argument("random point in an empty region");
  std::vector<double> cum;
  double total = 0;
  for (const auto& s : r.strips) cum.push_back(total += std::max(0.0, to_double(area(s))));
  const double u = unit(rng) * total;
  std::size_t k = std::upper_bound(cum.begin(), cum.end(), u) - cum.begin();
  if (k >= cum.size()) k = cum.size() - 1;
  const Strip& s = r.strips[k];
  const long i = 1 + static_cast<long>(rng() % 996);
  const long j = 1 + static_cast<long>(rng() % 990);
  const QPhi x = s.x.lo + (s.x.hi - s.x.lo) * QPhi(Rational(i, 997));
  const QPhi lo = s.lower.f(x), hi = s.upper.f(x);
  return {x, lo + (hi - lo) * QPhi(Rational(j, 991))};
}

Point random_point(const PieceExchange& e, std::mt19937_64& rng) { return random_point(e.domain(), rng); }

Point strip_midpoint(const Strip& s) {
  const QPhi x = (s.x.lo + s.x.hi) / QPhi(2);
  return {x, (s.lower.f(x) + s.upper.f(x)) / QPhi(2)};
}

std::vector<QPhi> piece_areas(const PieceExchange& e) {
  std::vector<QPhi> out;
  for (const auto& p : e.pieces) out.push_back(area(p.region));
  return out;
}

QPhi overlap_area(const PieceExchange& e) {
  QPhi total;
  for (std::size_t i = 0; i < e.pieces.size(); ++i) {
    for (std::size_t j = i + 1; j < e.pieces.size(); ++j) total += area(intersect(e.pieces[i].region, e.pieces[j].region));
  }
  return total;
}

std::vector<TranslateOverlap> integer_translate_overlaps(const PieceExchange& e) {
  struct Item {
    std::size_t piece, strip;
    Box box;
  };
  std::vector<Item> items;
  for (std::size_t i = 0; i < e.pieces.size(); ++i) {
    const auto& strips = e.pieces[i].region.strips;
    for (std::size_t j = 0; j < strips.size(); ++j) items.push_back({i, j, bounding_box(strips[j])});
  }
  std::vector<TranslateOverlap> out;
  for (std::size_t u = 0; u < items.size(); ++u) {
    for (std::size_t v = u; v < items.size(); ++v) {
      const Box& a = items[u].box;
      const Box& b = items[v].box;
      // Translating b by (n, m) must bring its box onto a's.
      const long n0 = static_cast<long>(std::ceil(a.x_lo - b.x_hi)), n1 = static_cast<long>(std::floor(a.x_hi - b.x_lo));
      const long m0 = static_cast<long>(std::ceil(a.y_lo - b.y_hi)), m1 = static_cast<long>(std::floor(a.y_hi - b.y_lo));
      for (long n = n0; n <= n1; ++n) {
        for (long m = m0; m <= m1; ++m) {
          if (n == 0 && m == 0) continue;
          const Strip& sa = e.pieces[items[u].piece].region.strips[items[u].strip];
          const Strip sb = translation(QPhi(n), QPhi(m)).apply(e.pieces[items[v].piece].region.strips[items[v].strip]);
          if (!area(intersect(sa, sb)).is_zero())
            out.push_back({items[u].piece, items[u].strip, items[v].piece, items[v].strip, n, m});
        }
      }
    }
  }
  return out;
}

}  // namespace nilex
