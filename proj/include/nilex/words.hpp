#pragma once

// Finite words, factorial languages with a length cap, factor complexity and
// substitutions.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nilex {

constexpr int kMaxAlphabet = 16;

/// A word over {1..m}. Symbols are stored as their index (1-based).
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<std::uint8_t> s) : s_(s) {}
  explicit Word(std::vector<std::uint8_t> s) : s_(std::move(s)) {}

  /// "1211" -> {1,2,1,1}; symbols 10..16 are written a..g.
  static Word parse(std::string_view text);

  std::size_t size() const { return s_.size(); }
  bool empty() const { return s_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return s_[i]; }
  const std::vector<std::uint8_t>& symbols() const { return s_; }

  void push_back(std::uint8_t c) { s_.push_back(c); }
  void append(const Word& w) { s_.insert(s_.end(), w.s_.begin(), w.s_.end()); }
  Word sub(std::size_t pos, std::size_t len) const {
    return Word(std::vector<std::uint8_t>(s_.begin() + pos, s_.begin() + pos + len));
  }
  Word prefix(std::size_t len) const { return sub(0, std::min(len, s_.size())); }
  std::uint8_t max_symbol() const;

  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) { return a.s_ <=> b.s_; }

 private:
  std::vector<std::uint8_t> s_;
};

/// Shorter words first, then lexicographic.
struct ShortLex {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

class Substitution {
 public:
  explicit Substitution(std::vector<Word> images);
  int alphabet() const { return static_cast<int>(images_.size()); }
  const Word& image(std::uint8_t c) const { return images_.at(c - 1); }

 private:
  std::vector<Word> images_;
};

/// 1 -> 12, 2 -> 1.
Substitution fibonacci_substitution();
/// 1 -> 12, 2 -> 13, 3 -> 1.
Substitution tribonacci_substitution();

/// Throws std::invalid_argument if w uses a symbol outside s's alphabet.
Word apply_substitution(const Substitution& s, const Word& w);

/// Prefix of the fixed point of s starting with 1.
Word fixed_point_prefix(const Substitution& s, std::size_t len);
Word fibonacci_word(std::size_t len);
Word tribonacci_word(std::size_t len);

/// Distinct factors of length n.
std::set<Word> factors(const Word& w, std::size_t n);
/// Number of distinct factors of length n.
std::size_t complexity(const Word& w, std::size_t n);

/// Complexity at n from prefixes of an infinite word: starts at length
/// max(200 + 10 n, min_len) and doubles until two consecutive counts agree.
/// Throws std::runtime_error if no agreement is reached by max_len.
std::size_t certified_complexity(const std::function<Word(std::size_t)>& prefix, std::size_t n,
                                 std::size_t min_len = 0, std::size_t max_len = 1u << 22);

/// Factorial language of words of length <= max_len.
class Language {
 public:
  using Set = std::set<Word, ShortLex>;

  Language(int alphabet, std::size_t max_len);

  /// Smallest factorial language containing the given words (each cut to
  /// its factors of length <= max_len).
  static Language closure(int alphabet, std::size_t max_len, const std::vector<Word>& words);
  /// Every word of length <= max_len.
  static Language full(int alphabet, std::size_t max_len);
  /// Factors of length <= max_len of the fixed point of s.
  static Language of_fixed_point(const Substitution& s, std::size_t max_len);

  int alphabet() const { return alphabet_; }
  std::size_t max_len() const { return max_len_; }
  const Set& words() const { return words_; }

  bool contains(const Word& w) const { return words_.count(w) != 0; }
  /// Adds every factor of w of length <= max_len.
  void insert_factors(const Word& w);

  /// Number of members of length n; throws std::out_of_range if n > max_len.
  std::size_t complexity(std::size_t n) const;
  /// Members of length <= m, with the cap lowered to m.
  Language slice(std::size_t m) const;
  bool subset_of(const Language& o) const;
  /// Members with no one-letter extension on either side.
  std::vector<Word> maximal_words() const;

  /// Sorted newline-separated listing (the empty word is written as an empty line).
  std::string export_text() const;

  friend bool operator==(const Language& a, const Language& b) {
    return a.alphabet_ == b.alphabet_ && a.max_len_ == b.max_len_ && a.words_ == b.words_;
  }

 private:
  int alphabet_;
  std::size_t max_len_;
  Set words_;
};

/// One step L -> closure(s(L)), truncated to L's cap. Sound because the
/// factors of bounded length of s(w) only depend on bounded factors of w.
Language substitute_language(const Substitution& s, const Language& L);
/// Returns L_0, ..., L_N for the Fibonacci substitution.
std::vector<Language> language_chain(const Language& L0, std::size_t iters);
Language iterate_language(const Language& L0, std::size_t iters, std::size_t max_len);
/// True iff the slices of length <= m coincide.
bool converged(const Language& a, const Language& b, std::size_t m);

/// "n,p_n" rows with a header.
std::string complexity_csv(const std::vector<std::pair<std::size_t, std::size_t>>& rows);

}  // namespace nilex
