#include <doctest.h>

#include "nilex/words.hpp"

using namespace nilex;

TEST_SUITE("words") {
  TEST_CASE("parse and print") {
    CHECK(Word::parse("121").str() == "121");
    CHECK(Word::parse("1a").size() == 2);
    CHECK(Word::parse("1a")[1] == 10);
    CHECK_THROWS_AS(Word::parse("10"), std::invalid_argument);
    CHECK(Word::parse("").empty());
  }

  TEST_CASE("fixed point prefixes") {
    CHECK(fibonacci_word(6).str() == "121121");
    CHECK(fibonacci_word(13).str() == "1211212112112");
    CHECK(tribonacci_word(7).str() == "1213121");
    CHECK(apply_substitution(fibonacci_substitution(), Word::parse("12")).str() == "121");
    CHECK_THROWS_AS(Substitution({Word::parse("13"), Word::parse("1")}), std::invalid_argument);
  }

  TEST_CASE("factor complexity") {
    const Word w = fibonacci_word(2000);
    for (std::size_t n = 1; n <= 20; ++n) CHECK(complexity(w, n) == n + 1);
    const Word t = tribonacci_word(4000);
    for (std::size_t n = 1; n <= 20; ++n) CHECK(complexity(t, n) == 2 * n + 1);
    CHECK(certified_complexity([](std::size_t L) { return fibonacci_word(L); }, 30) == 31);
    CHECK(factors(Word::parse("1211"), 2).size() == 3);
  }

  TEST_CASE("language closure and slices") {
    const Language L = Language::closure(2, 4, {Word::parse("1211")});
    CHECK(L.contains(Word::parse("21")));
    CHECK_FALSE(L.contains(Word::parse("22")));
    CHECK(L.complexity(1) == 2);
    CHECK(L.complexity(2) == 3);
    CHECK(L.complexity(4) == 1);
    CHECK(L.slice(2).max_len() == 2);
    CHECK(L.slice(2).subset_of(L));
    CHECK(Language::full(2, 3).complexity(3) == 8);
    CHECK(L.export_text() == L.export_text());
  }

  TEST_CASE("language iteration reaches the Fibonacci slice") {
    const Language fib = Language::of_fixed_point(fibonacci_substitution(), 8);
    for (std::size_t n = 1; n <= 8; ++n) CHECK(fib.complexity(n) == n + 1);
    const Language small = Language::closure(2, 8, {Word::parse("1"), Word::parse("2")});
    CHECK_FALSE(converged(small, fib, 2));
    const auto up = language_chain(small, 12);
    for (std::size_t i = 0; i + 1 < up.size(); ++i) CHECK(up[i].subset_of(up[i + 1]));
    CHECK(up.back() == fib);
    const auto down = language_chain(Language::full(2, 8), 12);
    for (std::size_t i = 0; i + 1 < down.size(); ++i) CHECK(down[i + 1].subset_of(down[i]));
    CHECK(down.back() == fib);
    CHECK(converged(iterate_language(small, 12, 8), fib, 8));
  }

  TEST_CASE("complexity csv") {
    CHECK(complexity_csv({{1, 2}, {2, 3}}) == "n,p_n\n1,2\n2,3\n");
  }
}
