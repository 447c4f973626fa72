#ifndef CFLRAND_WORD_HPP
#define CFLRAND_WORD_HPP

#include "cflrand/errors.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cflrand {

/// Index of a letter inside its Alphabet.
using Symbol = std::uint8_t;

/// A finite string of symbols; the empty vector is the empty word.
using Word = std::vector<Symbol>;

/// An ordered, finite set of named letters. Letter names are usually single
/// characters; track alphabets use composite names such as "0/1".
class Alphabet {
 public:
  Alphabet() = default;

  /// One letter per character of `letters`.
  explicit Alphabet(std::string_view letters) {
    std::vector<std::string> names;
    for (char c : letters) names.emplace_back(1, c);
    init(std::move(names));
  }

  explicit Alphabet(std::vector<std::string> names) { init(std::move(names)); }

  static Alphabet binary() { return Alphabet("01"); }

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(Symbol s) const { return names_.at(s); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  bool single_char() const noexcept { return single_char_; }

  bool contains(const Word& w) const noexcept {
    for (Symbol s : w)
      if (s >= names_.size()) return false;
    return true;
  }

  void check(const Word& w) const {
    if (!contains(w)) throw input_error("word contains a symbol outside the alphabet");
  }

  Symbol code(char c) const {
    int idx = by_char_[static_cast<unsigned char>(c)];
    if (idx < 0) throw input_error(std::string("symbol '") + c + "' is not in the alphabet");
    return static_cast<Symbol>(idx);
  }

  Symbol code(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return static_cast<Symbol>(i);
    throw input_error("symbol '" + std::string(name) + "' is not in the alphabet");
  }

  /// Parse a string of single-character letters.
  Word parse(std::string_view text) const {
    if (!single_char_) throw input_error("alphabet letters are not single characters");
    Word w;
    w.reserve(text.size());
    for (char c : text) w.push_back(code(c));
    return w;
  }

  std::string render(const Word& w) const {
    std::string out;
    for (Symbol s : w) out += names_.at(s);
    return out;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }

 private:
  void init(std::vector<std::string> names) {
    if (names.empty()) throw input_error("alphabet must be nonempty");
    if (names.size() > 255) throw input_error("alphabet too large");
    by_char_.fill(-1);
    single_char_ = true;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i].empty()) throw input_error("empty letter name");
      for (std::size_t j = 0; j < i; ++j)
        if (names[j] == names[i]) throw input_error("duplicate letter '" + names[i] + "'");
      if (names[i].size() == 1)
        by_char_[static_cast<unsigned char>(names[i][0])] = static_cast<int>(i);
      else
        single_char_ = false;
    }
    names_ = std::move(names);
  }

  std::vector<std::string> names_;
  std::array<int, 256> by_char_{};
  bool single_char_ = true;
};

inline std::size_t count_symbol(const Word& w, Symbol s) {
  std::size_t c = 0;
  for (Symbol x : w) c += (x == s);
  return c;
}

inline Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

inline Word reversed(const Word& w) { return Word(w.rbegin(), w.rend()); }

inline Word slice(const Word& w, std::size_t pos, std::size_t len) {
  return Word(w.begin() + static_cast<std::ptrdiff_t>(pos),
              w.begin() + static_cast<std::ptrdiff_t>(pos + len));
}

/// Word number `index` of Σ^n in lexicographic order (first symbol most
/// significant).
inline Word word_at(std::uint64_t index, std::size_t sigma, std::size_t n) {
  Word w(n);
  for (std::size_t i = n; i-- > 0;) {
    w[i] = static_cast<Symbol>(index % sigma);
    index /= sigma;
  }
  return w;
}

/// Advance `w` to its lexicographic successor in Σ^n; false on wrap-around.
inline bool next_word(Word& w, std::size_t sigma) {
  for (std::size_t i = w.size(); i-- > 0;) {
    if (++w[i] < sigma) return true;
    w[i] = 0;
  }
  return false;
}

/// |Σ|^n as an unsigned 64-bit value, saturating at UINT64_MAX.
inline std::uint64_t power_saturating(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

}  // namespace cflrand

#endif  // CFLRAND_WORD_HPP
