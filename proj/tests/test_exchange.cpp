#include <doctest.h>

#include <random>
#include <sstream>

#include "nilex/exchange.hpp"
#include "nilex/exchange_io.hpp"

using namespace nilex;

namespace {

const QPhi phi = QPhi::phi();
const QPhi inv_phi = phi - QPhi(1);
const QPhi inv_phi2 = QPhi(2) - phi;

QPhi q(long a, long b = 0) { return QPhi(Rational(a), Rational(b)); }
QPhi qr(long an, long ad, long bn, long bd) { return QPhi(Rational(an, ad), Rational(bn, bd)); }

QPhi small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-40, 40);
  return QPhi(Rational(d(rng), 8), Rational(d(rng), 16));
}

Strip random_strip(std::mt19937_64& rng, const QPhi& c2) {
  QPhi lo = small_rational(rng), hi = small_rational(rng);
  while (lo == hi) hi = small_rational(rng);
  if (hi < lo) std::swap(lo, hi);
  const QPhi c1 = small_rational(rng), c0 = small_rational(rng);
  const QPhi thickness = abs(small_rational(rng)) + QPhi(Rational(1, 4));
  Strip s;
  s.x = {lo, hi, (rng() & 1) != 0, (rng() & 1) != 0};
  s.lower = {{c2, c1, c0}, (rng() & 1) != 0};
  s.upper = {{c2, c1 + small_rational(rng), c0 + thickness}, (rng() & 1) != 0};
  return s;
}

// Raw random bounds may cross; clip keeps only the part where lower < upper.
Region clip_strip(const Strip& s) { return clip(s.x, {s.lower}, {s.upper}); }

}  // namespace

TEST_SUITE("plane_exchange") {
  TEST_CASE("maps") {
    const Point p = psi_inverse(Point{QPhi(1), QPhi()});
    CHECK(p.x == -inv_phi);
    CHECK(p.y == -(QPhi(1) / (QPhi(2) * phi_power(3))));
    CHECK(psi(p) == Point{QPhi(1), QPhi()});
    const QPhi h = QPhi(1) / (QPhi(2) * phi_power(3));
    CHECK(apply_T_phi(Point{QPhi(1), QPhi(2)}) == Point{QPhi(1) + inv_phi2, QPhi(3) - h});
    CHECK(apply_T_phi_inverse(apply_T_phi(Point{inv_phi, q(3)})) == Point{inv_phi, q(3)});
    const ShearMap t = t_phi();
    const ShearMap u = translation(inv_phi2, q(-3, 2));
    const Point x{qr(1, 3, 1, 5), qr(-2, 7, 1, 1)};
    CHECK(t.then(u)(x) == u(t(x)));
    CHECK(t.inverse()(t(x)) == x);
  }

  TEST_CASE("base exchange") {
    const PieceExchange e = build_base_exchange();
    const auto a = piece_areas(e);
    REQUIRE(a.size() == 2);
    CHECK(a[0] == inv_phi);
    CHECK(a[1] == inv_phi2);
    CHECK(overlap_area(e).is_zero());
    CHECK(integer_translate_overlaps(e).empty());
    const WitnessInterval w = projection_witness(e);
    CHECK(w.feasible());
    CHECK(w.contains(reference_witness()));
    CHECK(reference_witness() == QPhi(1) / (QPhi(2) * phi) + QPhi(1) / (QPhi(2) * phi_power(3)));
    CHECK(common_leading_coefficient(e.domain()) == qr(1, 2, 1, 2));
    const auto lit = piece_areas(build_base_exchange(BaseReading::Literal));
    CHECK_FALSE((lit[0] == inv_phi && lit[1] == inv_phi2));
  }

  TEST_CASE("renormalized levels") {
    PieceExchange e = build_base_exchange();
    // Frozen from the exact region algebra; width is 1 + phi^-(N+1).
    const QPhi y_bounds[] = {qr(-7, 8, 1, 1),   qr(-5, 4, 5, 4),    qr(-19, 24, 1, 1), qr(-47, 40, 5, 4),
                             qr(-11, 16, 1, 1), qr(-111, 104, 5, 4), qr(-33, 56, 1, 1), qr(-33, 34, 5, 4)};
    const QPhi c2s[] = {qr(1, 2, 1, 2), q(-1, -2), qr(3, 1, 9, 2), qr(-15, 2, -25, 2),
                        q(20, 32),     qr(-52, 1, -169, 2), qr(273, 2, 441, 2), q(-357, -578)};
    for (int N = 1; N <= 8; ++N) {
      CAPTURE(N);
      const auto a = piece_areas(e);
      CHECK(a[0] == inv_phi);
      CHECK(a[1] == inv_phi2);
      CHECK(overlap_area(e).is_zero());
      const Interval xe = x_extent(e.domain());
      CHECK(xe.hi - xe.lo == QPhi(1) + phi_power(-(N + 1)));
      CHECK(y_extent_bound(e.domain()) == y_bounds[N - 1]);
      CHECK(common_leading_coefficient(e.domain()) == c2s[N - 1]);
      const PieceExchange next = renormalize(e, {true});
      CHECK(included(t_phi().apply(psi_inverse(e.pieces[1].region)), next.pieces[0].region));
      e = next;
    }
    CHECK(exchange_to_text(exchange_at_level(9)) == exchange_to_text(e));
  }

  TEST_CASE("renormalize rejects a broken hypothesis") {
    PieceExchange e = build_base_exchange();
    e.pieces[1].n = 0;
    CHECK_THROWS_AS(renormalize(e), HypothesisError);
    CHECK_THROWS_AS(renormalize(build_translation_exchange(inv_phi, qr(3, 10, 1, 29)).exchange), HypothesisError);
    const WitnessInterval lit = projection_witness(build_base_exchange(BaseReading::Literal));
    CHECK_FALSE(lit.contains(reference_witness()));
  }

  TEST_CASE("area identities on random strip pairs") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
      const QPhi c2 = small_rational(rng);
      const Region a = clip_strip(random_strip(rng, c2)), b = clip_strip(random_strip(rng, c2));
      const QPhi ab = area(intersect(a, b));
      CHECK(ab + area(subtract(a, b)) == area(a));
      CHECK(ab == area(intersect(b, a)));
      CHECK(sign(ab) >= 0);
      CHECK(sign(area(a)) >= 0);
      CHECK(included(intersect(a, b), a));
      CHECK(included(intersect(a, b), b));
    }
  }

  TEST_CASE("mismatched leading coefficients are refused") {
    std::mt19937_64 rng(5);
    const Strip a = random_strip(rng, QPhi(1)), b = random_strip(rng, QPhi(2));
    CHECK_THROWS_AS(common_leading_coefficient(Region{{a, b}}), LeadingCoefficientMismatch);
  }

  TEST_CASE("translation exchange") {
    const QPhi alpha = inv_phi, beta = qr(3, 10, 1, 29);
    const TranslationBuild t = build_translation_exchange(alpha, beta);
    CHECK_FALSE(t.relation);
    const auto a = piece_areas(t.exchange);
    REQUIRE(a.size() == 4);
    CHECK(a[0] == (QPhi(1) - alpha) * (QPhi(1) - beta));
    CHECK(a[1] == alpha * (QPhi(1) - beta));
    CHECK(a[2] == (QPhi(1) - alpha) * beta);
    CHECK(a[3] == alpha * beta);
    CHECK(locate(t.exchange, Point{QPhi(), QPhi()}) == 1);
    CHECK(overlap_area(t.exchange).is_zero());

    CHECK_THROWS_AS(build_translation_exchange(inv_phi2, q(-3, 2)), RationalDependence);
    const TranslationBuild d = build_translation_exchange(inv_phi2, q(-3, 2), DependencePolicy::Report);
    REQUIRE(d.relation);
    CHECK(d.relation->n == 2);
    CHECK(d.relation->m == 1);
    CHECK(d.relation->k == 1);
    CHECK_THROWS_AS(build_translation_exchange(QPhi(1), inv_phi), std::invalid_argument);
  }

  TEST_CASE("orbits") {
    const PieceExchange e = build_base_exchange();
    const Locator loc(e);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 20; ++i) {
      Point p = random_point(e, rng);
      CHECK(loc.locate(p) == locate(e, p));
      const Word w = loc.code(p, 500);
      CHECK(w == code_orbit(e, p, 500));
      for (std::size_t k = 0; k < 50; ++k) {
        CHECK(e.pieces[loc.locate_index(p)].region.strips.size() > 0);
        p = loc.step(p);
      }
    }
    CHECK_THROWS_AS(locate(e, Point{q(100), q(100)}), LocateError);
  }

  TEST_CASE("text format round trip") {
    for (int level : {1, 3}) {
      const PieceExchange e = exchange_at_level(level);
      const std::string text = exchange_to_text(e);
      const PieceExchange back = exchange_from_text(text);
      CHECK(exchange_to_text(back) == text);
      CHECK(piece_areas(back) == piece_areas(e));
    }
    const auto t = build_translation_exchange(inv_phi, qr(3, 10, 1, 29)).exchange;
    CHECK(exchange_to_text(exchange_from_text(exchange_to_text(t))) == exchange_to_text(t));
    CHECK_THROWS(exchange_from_text("garbage\n"));
    const std::string svg = render_svg(build_base_exchange());
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
  }
}
