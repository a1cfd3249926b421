#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "nilex/complexity.hpp"

using namespace nilex;

namespace {

const QPhi phi = QPhi::phi();
const QPhi inv_phi = phi - QPhi(1);

QPhi qr(long an, long ad, long bn, long bd) { return QPhi(Rational(an, ad), Rational(bn, bd)); }

// Largest gap between the n+1 points frac(-k t), k = 0..n, on the circle.
double max_gap(double t, std::size_t n) {
  std::vector<double> pts;
  for (std::size_t k = 0; k <= n; ++k) {
    const double v = -static_cast<double>(k) * t;
    pts.push_back(v - std::floor(v));
  }
  std::sort(pts.begin(), pts.end());
  double g = 1 - pts.back() + pts.front();
  for (std::size_t i = 1; i < pts.size(); ++i) g = std::max(g, pts[i] - pts[i - 1]);
  return g;
}

}  // namespace

TEST_SUITE("complexity_engine") {
  TEST_CASE("level-1 complexity and cell areas") {
    const auto rows = complexity_table(build_base_exchange(), 12);
    const std::size_t p[] = {2, 4, 7, 10, 16, 22, 29, 39, 49, 61, 76, 91};
    const QPhi max_area[] = {qr(-1, 1, 1, 1),   qr(-5, 4, 1, 1),     qr(-9, 2, 3, 1),    qr(-17, 4, 11, 4),
                             qr(-29, 3, 73, 12), qr(-205, 12, 32, 3), qr(-73, 6, 91, 12), qr(-73, 6, 91, 12),
                             qr(-26, 1, 129, 8), qr(-155, 4, 24, 1),  qr(-155, 4, 24, 1), qr(-63, 2, 39, 2)};
    REQUIRE(rows.size() == 12);
    for (std::size_t i = 0; i < 12; ++i) {
      CAPTURE(i);
      CHECK(rows[i].n == i + 1);
      CHECK(rows[i].p == p[i]);
      CHECK(rows[i].max_area == max_area[i]);
      if (i) CHECK(rows[i].max_area <= rows[i - 1].max_area);
    }
    CHECK(sturmian_prefix(rows) == 1);
    CHECK(max_cell_area(build_base_exchange(), 5) == max_area[4]);
  }

  TEST_CASE("cells partition the domain") {
    const PieceExchange e = exchange_at_level(2);
    Refinement r(e);
    for (std::size_t n = 1; n <= 6; ++n) {
      r.deepen_to(n);
      CHECK(r.total_area() == QPhi(1));
      QPhi sum;
      for (const auto& c : r.cells()) {
        CHECK(c.word.size() == n);
        CHECK(area(c.region) == c.cell_area);
        sum += c.cell_area;
      }
      CHECK(sum == QPhi(1));
    }
    CHECK(refine(e, 4).size() == complexity_table(e, 4).back().p);
  }

  TEST_CASE("sturmian prefix grows with the level") {
    const std::size_t expected[] = {1, 2, 4, 7, 12, 12, 12, 12, 12, 12};
    PieceExchange e = build_base_exchange();
    for (int N = 1; N <= 10; ++N) {
      CAPTURE(N);
      CHECK(sturmian_prefix(complexity_table(e, 12)) == expected[N - 1]);
      if (N < 10) e = renormalize(e);
    }
    const auto rows = complexity_table(e, 12);
    for (const auto& row : rows) CHECK(row.p == row.n + 1);
    CHECK(language_from_refinement(e, 6) == Language::of_fixed_point(fibonacci_substitution(), 6));
  }

  TEST_CASE("renormalization acts on languages by the substitution") {
    PieceExchange e = build_base_exchange();
    for (int N = 1; N <= 4; ++N) {
      const PieceExchange next = renormalize(e);
      CHECK(substitute_language(fibonacci_substitution(), language_from_refinement(e, 8)) ==
            language_from_refinement(next, 8));
      e = next;
    }
  }

  TEST_CASE("refinement factors are orbit factors") {
    const PieceExchange e = build_base_exchange();
    const Language cells = language_from_refinement(e, 6);
    Language seen(2, 6);
    const Locator loc(e);
    std::mt19937_64 rng(17);
    for (int i = 0; i < 20; ++i) seen.insert_factors(loc.code(random_point(e, rng), 20'000));
    CHECK(seen == cells);
  }

  TEST_CASE("translation exchange") {
    const QPhi alpha = QPhi(2) - phi, beta = qr(-3, 1, 2, 1);
    const auto t = build_translation_exchange(alpha, beta, DependencePolicy::Report);
    const auto rows = complexity_table(t.exchange, 8);
    const QPhi max_area[] = {qr(-6, 1, 4, 1), qr(18, 1, -11, 1), qr(26, 1, -16, 1), qr(13, 1, -8, 1),
                             qr(13, 1, -8, 1), qr(13, 1, -8, 1), qr(-21, 1, 13, 1), qr(-110, 1, 68, 1)};
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::size_t n = i + 1;
      CAPTURE(n);
      CHECK(rows[i].p == (n + 1) * (n + 1));
      CHECK(rows[i].max_area == max_area[i]);
      CHECK(to_double(rows[i].max_area) <=
            max_gap(to_double(alpha), n) * max_gap(to_double(beta), n) + 1e-12);
    }
    const auto g = build_translation_exchange(inv_phi, qr(3, 10, 1, 29));
    const auto grows = complexity_table(g.exchange, 6);
    for (const auto& row : grows) CHECK(row.p == (row.n + 1) * (row.n + 1));
  }

  TEST_CASE("csv output") {
    const auto rows = complexity_table(exchange_at_level(10), 3);
    CHECK(complexity_csv(10, rows) == "level,n,p_n\n10,1,2\n10,2,3\n10,3,4\n");
    CHECK(!cells_text(refine(build_base_exchange(), 2)).empty());
  }
}
