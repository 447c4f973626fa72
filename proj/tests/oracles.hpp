// Brute-force reference implementations used only by the tests. Each one is
// written from the set definition, independently of the library code paths.
#ifndef CFLRAND_TESTS_ORACLES_HPP
#define CFLRAND_TESTS_ORACLES_HPP

#include "cflrand/cflrand.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace ref {

using cflrand::Symbol;
using cflrand::Word;

inline std::vector<Word> all_words(std::size_t sigma, std::size_t n) {
  std::vector<Word> out;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= sigma;
  for (std::uint64_t x = 0; x < total; ++x) {
    Word w(n);
    std::uint64_t v = x;
    for (std::size_t i = n; i-- > 0;) {
      w[i] = static_cast<Symbol>(v % sigma);
      v /= sigma;
    }
    out.push_back(std::move(w));
  }
  return out;
}

inline std::vector<Word> words_up_to(std::size_t sigma, std::size_t n) {
  std::vector<Word> out;
  for (std::size_t l = 0; l <= n; ++l)
    for (auto& w : all_words(sigma, l)) out.push_back(std::move(w));
  return out;
}

inline Word bits(const std::string& s) { return cflrand::Alphabet::binary().parse(s); }

inline std::string str(const Word& w) {
  std::string s;
  for (auto c : w) s += static_cast<char>('0' + c);
  return s;
}

inline bool dfa_accepts(const cflrand::Dfa& d, const Word& w) {
  cflrand::State q = d.start();
  for (auto s : w) q = d.table()[q * d.sigma() + s];
  return d.finals()[q];
}

inline std::uint64_t count(const std::vector<Word>& ws, const auto& pred) {
  std::uint64_t c = 0;
  for (const auto& w : ws) c += pred(w) ? 1 : 0;
  return c;
}

// ---- languages straight from their set definitions ----------------------

inline bool equal(const Word& w) {
  std::size_t z = 0, o = 0;
  for (auto s : w) (s == 0 ? z : o)++;
  return z == o;
}

/// Equal_* = {a w : a ∈ {λ,0,1}, w ∈ Equal}: try each admissible a.
inline bool equal_star(const Word& w) {
  if (equal(w)) return true;
  return !w.empty() && equal(Word(w.begin() + 1, w.end()));
}

/// Some split w = x # y with y equal to x reversed.
inline bool pal_sharp(const Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] != 2) continue;
    Word x(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
    Word y(w.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.end());
    bool marker_free = true;
    for (auto s : x) marker_free = marker_free && s != 2;
    for (auto s : y) marker_free = marker_free && s != 2;
    if (marker_free && Word(x.rbegin(), x.rend()) == y) return true;
  }
  return false;
}

inline bool dup_sharp(const Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] != 2) continue;
    Word x(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
    Word y(w.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.end());
    bool marker_free = true;
    for (auto s : x) marker_free = marker_free && s != 2;
    for (auto s : y) marker_free = marker_free && s != 2;
    if (marker_free && x == y) return true;
  }
  return false;
}

/// a u 0^m 1 0^m v, a ∈ {λ,0,1}, 2^m <= |u| = |v| < 2^(m+1): every
/// decomposition is tried.
inline bool l_center(const Word& w) {
  for (std::size_t a = 0; a <= 1 && a <= w.size(); ++a)
    for (std::size_t m = 0; 2 * m + 1 <= w.size(); ++m) {
      if (w.size() < a + 2 * m + 1) continue;
      std::size_t rest = w.size() - a - 2 * m - 1;
      if (rest % 2) continue;
      std::size_t u = rest / 2;
      if (u < (std::size_t{1} << m) || u >= (std::size_t{2} << m)) continue;
      bool ok = true;
      for (std::size_t i = 0; i < 2 * m + 1; ++i) ok = ok && w[a + u + i] == (i == m ? 1 : 0);
      if (ok) return true;
    }
  return false;
}

/// IP_* = {a u v : a ∈ {λ,0,1}, |u| = |v|, u^R ⊙ v odd}.
inline bool ip_star(const Word& w) {
  for (std::size_t a = 0; a <= 1 && a <= w.size(); ++a) {
    if ((w.size() - a) % 2) continue;
    std::size_t h = (w.size() - a) / 2;
    int p = 0;
    for (std::size_t i = 0; i < h; ++i) p += w[a + h - 1 - i] * w[a + h + i];
    if (p % 2 == 1) return true;
  }
  return false;
}

inline bool keq(const Word& w, std::size_t k) {
  for (std::size_t n = 0; n * k <= w.size(); ++n) {
    Word c;
    for (std::size_t i = 0; i < k; ++i) c.insert(c.end(), n, static_cast<Symbol>(i));
    if (c == w) return true;
  }
  return false;
}

inline bool pal(const Word& w) { return w.size() % 2 == 0 && Word(w.rbegin(), w.rend()) == w; }

// ---- generator -----------------------------------------------------------

/// G restated from the case analysis with explicit 1-based indices.
inline Word g(const Word& w) {
  if (w.size() % 2 == 0) {
    Word r{w[0]};
    Word t = g(Word(w.begin() + 1, w.end()));
    r.insert(r.end(), t.begin(), t.end());
    return r;
  }
  std::size_t k = (w.size() - 1) / 2;
  auto z = [&](std::size_t i) { return w[i]; };          // z_i, i in 1..k
  auto y = [&](std::size_t i) { return w[k + i]; };      // y_i, i in 1..k
  int p = 0;
  for (std::size_t i = 1; i <= k; ++i) p += z(k - i + 1) * y(i);
  Symbol b = w[0];
  Word out = w;
  if (p % 2 == 1) {
    out.push_back(static_cast<Symbol>(1 - b));
  } else if (b == 1) {
    out.push_back(1);
  } else {
    std::size_t found = 0;
    for (std::size_t i = 1; i <= k && !found; ++i)
      if (z(k - i + 1) == 1) found = i;
    if (found) {
      out[k + found] = static_cast<Symbol>(1 - out[k + found]);
      out.push_back(0);
    } else {
      out[0] = 1;
      out.push_back(1);
    }
  }
  return out;
}

// ---- recurrence window ---------------------------------------------------

/// a^(k)_i counted by listing words and checking each prefix window.
inline std::vector<std::uint64_t> window_counts(std::size_t m, std::size_t i) {
  std::vector<std::uint64_t> out(m, 0);
  long m0 = static_cast<long>(m / 2);
  for (const auto& v : all_words(2, i)) {
    bool ok = true;
    long zeros = 0;
    for (std::size_t j = 1; j <= i; ++j) {
      zeros += v[j - 1] == 0;
      long c = static_cast<long>((j + 1) / 2);
      if (j >= m - 1 && (zeros < c - m0 || zeros > c + m0)) ok = false;
    }
    if (!ok) continue;
    long k = static_cast<long>((i + 1) / 2) + m0 + 1 - zeros;
    if (k >= 1 && k <= static_cast<long>(m)) ++out[static_cast<std::size_t>(k - 1)];
  }
  return out;
}

}  // namespace ref

#endif  // CFLRAND_TESTS_ORACLES_HPP
