#include "nilex/words.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace nilex {

Word Word::parse(std::string_view text) {
  Word w;
  for (char ch : text) {
    int v;
    if (ch >= '1' && ch <= '9') {
      v = ch - '0';
    } else if (ch >= 'a' && ch <= 'g') {
      v = 10 + (ch - 'a');
    } else {
      throw std::invalid_argument(std::string("bad symbol '") + ch + "'");
    }
    w.s_.push_back(static_cast<std::uint8_t>(v));
  }
  return w;
}

std::uint8_t Word::max_symbol() const {
  return s_.empty() ? 0 : *std::max_element(s_.begin(), s_.end());
}

std::string Word::str() const {
  std::string out;
  out.reserve(s_.size());
  for (auto c : s_) out.push_back(c <= 9 ? static_cast<char>('0' + c) : static_cast<char>('a' + c - 10));
  return out;
}

Substitution::Substitution(std::vector<Word> images) : images_(std::move(images)) {
  if (images_.empty() || images_.size() > kMaxAlphabet) throw std::invalid_argument("bad alphabet size");
  for (const auto& w : images_) {
    if (w.empty()) throw std::invalid_argument("empty substitution image");
    if (w.max_symbol() > images_.size()) throw std::invalid_argument("image leaves the alphabet");
  }
}

Substitution fibonacci_substitution() { return Substitution({Word{1, 2}, Word{1}}); }
Substitution tribonacci_substitution() { return Substitution({Word{1, 2}, Word{1, 3}, Word{1}}); }

Word apply_substitution(const Substitution& s, const Word& w) {
  Word out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto c = w[i];
    if (c == 0 || c > s.alphabet()) throw std::invalid_argument("symbol outside the substitution alphabet");
    out.append(s.image(c));
  }
  return out;
}

Word fixed_point_prefix(const Substitution& s, std::size_t len) {
  if (s.image(1)[0] != 1 || s.image(1).size() < 2) throw std::invalid_argument("no fixed point starting with 1");
  Word w{1};
  while (w.size() < len) w = apply_substitution(s, w);
  return w.prefix(len);
}

Word fibonacci_word(std::size_t len) { return fixed_point_prefix(fibonacci_substitution(), len); }
Word tribonacci_word(std::size_t len) { return fixed_point_prefix(tribonacci_substitution(), len); }

std::set<Word> factors(const Word& w, std::size_t n) {
  std::set<Word> out;
  if (n > w.size()) return out;
  for (std::size_t i = 0; i + n <= w.size(); ++i) out.insert(w.sub(i, n));
  return out;
}

std::size_t complexity(const Word& w, std::size_t n) {
  if (n > w.size()) return 0;
  if (n == 0) return 1;
  const std::string text = w.str();
  std::unordered_set<std::string_view> seen;
  std::string_view v(text);
  for (std::size_t i = 0; i + n <= v.size(); ++i) seen.insert(v.substr(i, n));
  return seen.size();
}

std::size_t certified_complexity(const std::function<Word(std::size_t)>& prefix, std::size_t n,
                                 std::size_t min_len, std::size_t max_len) {
  std::size_t len = std::max<std::size_t>(200 + 10 * n, min_len);
  std::size_t prev = complexity(prefix(len), n);
  while (len * 2 <= max_len) {
    len *= 2;
    const std::size_t cur = complexity(prefix(len), n);
    if (cur == prev) return cur;
    prev = cur;
  }
  throw std::runtime_error("complexity not stable under prefix doubling up to length " +
                           std::to_string(max_len));
}

Language::Language(int alphabet, std::size_t max_len) : alphabet_(alphabet), max_len_(max_len) {
  if (alphabet < 1 || alphabet > kMaxAlphabet) throw std::invalid_argument("bad alphabet size");
  words_.insert(Word{});
}

void Language::insert_factors(const Word& w) {
  if (w.max_symbol() > alphabet_) throw std::invalid_argument("word leaves the alphabet");
  for (std::size_t i = 0; i < w.size(); ++i) {
    // Longest first; once a factor is present so are all of its prefixes.
    for (std::size_t n = std::min(max_len_, w.size() - i); n >= 1; --n) {
      if (!words_.insert(w.sub(i, n)).second) break;
    }
  }
}

Language Language::closure(int alphabet, std::size_t max_len, const std::vector<Word>& words) {
  Language L(alphabet, max_len);
  for (const auto& w : words) L.insert_factors(w);
  return L;
}

Language Language::full(int alphabet, std::size_t max_len) {
  Language L(alphabet, max_len);
  std::vector<Word> layer{Word{}};
  for (std::size_t n = 1; n <= max_len; ++n) {
    std::vector<Word> next;
    next.reserve(layer.size() * alphabet);
    for (const auto& w : layer) {
      for (int c = 1; c <= alphabet; ++c) {
        Word v = w;
        v.push_back(static_cast<std::uint8_t>(c));
        next.push_back(std::move(v));
      }
    }
    L.words_.insert(next.begin(), next.end());
    layer = std::move(next);
  }
  return L;
}

Language Language::of_fixed_point(const Substitution& s, std::size_t max_len) {
  // A prefix long enough that all factors of length <= max_len occur; the
  // count at max_len is certified by doubling.
  std::size_t len = 200 + 10 * max_len;
  std::size_t prev = nilex::complexity(fixed_point_prefix(s, len), max_len);
  for (;;) {
    len *= 2;
    const std::size_t cur = nilex::complexity(fixed_point_prefix(s, len), max_len);
    if (cur == prev) break;
    prev = cur;
  }
  Language L(s.alphabet(), max_len);
  const Word w = fixed_point_prefix(s, len);
  for (std::size_t i = 0; i + max_len <= w.size(); ++i) L.insert_factors(w.sub(i, max_len));
  return L;
}

std::size_t Language::complexity(std::size_t n) const {
  if (n > max_len_) throw std::out_of_range("length beyond the language cap");
  std::size_t c = 0;
  for (const auto& w : words_) c += w.size() == n;
  return c;
}

Language Language::slice(std::size_t m) const {
  Language L(alphabet_, m);
  for (const auto& w : words_) {
    if (w.size() <= m) L.words_.insert(w);
  }
  return L;
}

bool Language::subset_of(const Language& o) const {
  return std::includes(o.words_.begin(), o.words_.end(), words_.begin(), words_.end(), ShortLex{});
}

std::vector<Word> Language::maximal_words() const {
  std::vector<Word> out;
  for (const auto& w : words_) {
    bool extends = false;
    if (w.size() < max_len_) {
      for (int c = 1; c <= alphabet_ && !extends; ++c) {
        Word right = w;
        right.push_back(static_cast<std::uint8_t>(c));
        Word left{static_cast<std::uint8_t>(c)};
        left.append(w);
        extends = contains(right) || contains(left);
      }
    }
    if (!extends) out.push_back(w);
  }
  return out;
}

std::string Language::export_text() const {
  std::string out;
  for (const auto& w : words_) {
    out += w.str();
    out += '\n';
  }
  return out;
}

Language substitute_language(const Substitution& s, const Language& L) {
  if (s.alphabet() != L.alphabet()) throw std::invalid_argument("alphabet mismatch");
  Language out(L.alphabet(), L.max_len());
  for (const auto& w : L.maximal_words()) out.insert_factors(apply_substitution(s, w));
  return out;
}

std::vector<Language> language_chain(const Language& L0, std::size_t iters) {
  if (L0.alphabet() != 2) throw std::invalid_argument("language iteration needs alphabet {1,2}");
  const Substitution s = fibonacci_substitution();
  std::vector<Language> chain{L0};
  chain.reserve(iters + 1);
  for (std::size_t i = 0; i < iters; ++i) chain.push_back(substitute_language(s, chain.back()));
  return chain;
}

Language iterate_language(const Language& L0, std::size_t iters, std::size_t max_len) {
  if (max_len > L0.max_len()) throw std::invalid_argument("cannot raise the cap of the starting language");
  return language_chain(L0.slice(max_len), iters).back();
}

bool converged(const Language& a, const Language& b, std::size_t m) {
  if (a.max_len() < m || b.max_len() < m) throw std::invalid_argument("language cap below the compared length");
  return a.slice(m) == b.slice(m);
}

std::string complexity_csv(const std::vector<std::pair<std::size_t, std::size_t>>& rows) {
  std::ostringstream os;
  os << "n,p_n\n";
  for (const auto& [n, p] : rows) os << n << ',' << p << '\n';
  return os.str();
}

}  // namespace nilex
