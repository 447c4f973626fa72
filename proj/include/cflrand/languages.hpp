#ifndef CFLRAND_LANGUAGES_HPP
#define CFLRAND_LANGUAGES_HPP

#include "cflrand/advised.hpp"
#include "cflrand/dfa.hpp"
#include "cflrand/errors.hpp"
#include "cflrand/numeric.hpp"
#include "cflrand/word.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace cflrand {

/// A named membership predicate over a declared alphabet.
struct LanguageOracle {
  std::string name;
  Alphabet alphabet;
  std::function<bool(const Word&)> member;

  bool contains(const Word& w) const {
    alphabet.check(w);
    return member(w);
  }
};

inline LanguageOracle complement(const LanguageOracle& l) {
  return {"not-" + l.name, l.alphabet, [m = l.member](const Word& w) { return !m(w); }};
}

inline LanguageOracle universal_language(const Alphabet& a) {
  return {"sigma-star", a, [](const Word&) { return true; }};
}

inline LanguageOracle empty_language(const Alphabet& a) {
  return {"empty", a, [](const Word&) { return false; }};
}

inline LanguageOracle oracle_from_dfa(Dfa d, std::string name = "dfa") {
  Alphabet a = d.alphabet();
  return {std::move(name), std::move(a),
          [d = std::move(d)](const Word& w) { return d.is_final(d.run_from(d.start(), w)); }};
}

inline LanguageOracle oracle_from_advised(AdvisedDfa m, std::string name = "advised") {
  Alphabet a = m.input_alphabet();
  return {std::move(name), std::move(a), [m = std::move(m)](const Word& w) { return accepts(m, w); }};
}

// ---------------------------------------------------------------------------
// Membership predicates. Binary words use 0/1 codes; the marker '#' is code 2.

namespace lang {

inline constexpr Symbol kMark = 2;

inline bool equal(const Word& w) { return 2 * count_symbol(w, 0) == w.size(); }

/// Equal on the word with its first symbol dropped when |w| is odd.
inline bool equal_star(const Word& w) {
  if (w.size() % 2 == 0) return equal(w);
  return equal(Word(w.begin() + 1, w.end()));
}

inline bool three_equal(const Word& w) {
  auto a = count_symbol(w, 0);
  return a == count_symbol(w, 1) && a == count_symbol(w, 2);
}

/// a_1^n a_2^n ... a_k^n with letters coded 0..k-1.
inline bool keq(const Word& w, std::size_t k) {
  if (w.size() % k != 0) return false;
  const std::size_t block = w.size() / k;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] != i / block) return false;
  return true;
}

inline bool leq(const Word& w) { return keq(w, 2); }

inline bool pal(const Word& w) {
  if (w.size() % 2 != 0) return false;
  for (std::size_t i = 0; i < w.size() / 2; ++i)
    if (w[i] != w[w.size() - 1 - i]) return false;
  return true;
}

inline bool dup(const Word& w) {
  if (w.size() % 2 != 0) return false;
  const std::size_t h = w.size() / 2;
  return std::equal(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(h),
                    w.begin() + static_cast<std::ptrdiff_t>(h));
}

namespace detail {
// Returns the half length when w = x # y with |x| = |y| and x, y marker-free.
inline std::optional<std::size_t> marked_halves(const Word& w) {
  if (w.size() % 2 == 0) return std::nullopt;
  const std::size_t h = w.size() / 2;
  if (w[h] != kMark) return std::nullopt;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (i != h && w[i] == kMark) return std::nullopt;
  return h;
}
}  // namespace detail

inline bool pal_sharp(const Word& w) {
  auto h = detail::marked_halves(w);
  if (!h) return false;
  for (std::size_t i = 0; i < *h; ++i)
    if (w[i] != w[w.size() - 1 - i]) return false;
  return true;
}

inline bool dup_sharp(const Word& w) {
  auto h = detail::marked_halves(w);
  if (!h) return false;
  for (std::size_t i = 0; i < *h; ++i)
    if (w[i] != w[*h + 1 + i]) return false;
  return true;
}

/// a u 0^m 1 0^m v with 2^m <= |u| = |v| < 2^(m+1). The leading symbol is
/// stripped iff the length is even; at most one m fits the window.
inline bool l_center(const Word& w) {
  const std::size_t skip = w.size() % 2 == 0 ? 1 : 0;
  if (w.size() < skip) return false;
  const std::size_t n = w.size() - skip;
  for (std::size_t m = 0; (std::size_t{2} << m) + 2 * m + 1 <= n; ++m) {
    const std::size_t u = (n - 2 * m - 1) / 2;
    if (u < (std::size_t{1} << m) || u >= (std::size_t{2} << m)) continue;
    const std::size_t mid = skip + u;
    for (std::size_t i = 0; i < 2 * m + 1; ++i)
      if (w[mid + i] != (i == m ? 1 : 0)) return false;
    return true;
  }
  return false;
}

}  // namespace lang

/// Binary inner product parity: sum of u_i * v_i mod 2.
inline int inner_product(const Word& u, const Word& v) {
  if (u.size() != v.size()) throw input_error("inner product needs equal lengths");
  int p = 0;
  for (std::size_t i = 0; i < u.size(); ++i) p ^= (u[i] & v[i] & 1);
  return p;
}

namespace lang {

/// a u v with |u| = |v| and u^R . v odd; a is present iff |w| is odd.
inline bool ip_star(const Word& w) {
  const std::size_t skip = w.size() % 2;
  const std::size_t h = (w.size() - skip) / 2;
  int p = 0;
  for (std::size_t i = 0; i < h; ++i) p ^= (w[skip + h - 1 - i] & w[skip + h + i] & 1);
  return p == 1;
}

}  // namespace lang

// ---------------------------------------------------------------------------
// Double-logarithmic length windows.

enum class LengthClass { Even, Odd, Boundary };

inline const char* to_string(LengthClass c) {
  switch (c) {
    case LengthClass::Even: return "even";
    case LengthClass::Odd: return "odd";
    case LengthClass::Boundary: return "boundary";
  }
  return "?";
}

/// 2^(2^t) for t = 0..6, exact.
inline const std::array<BigInt, 7>& tower_table() {
  static const std::array<BigInt, 7> table = [] {
    std::array<BigInt, 7> t;
    for (unsigned i = 0; i < 7; ++i) t[i] = pow_int(2, std::size_t{1} << i);
    return t;
  }();
  return table;
}

/// Even iff 2^(2^(2k)) < n <= 2^(2^(2k+1)) for some k, or n = 0; Odd iff
/// 2^(2^(2k+1)) < n <= 2^(2^(2k+2)) for some k, or n = 1; n = 2 lies in
/// neither window and is reported as Boundary.
inline LengthClass length_class(std::uint64_t n) {
  if (n == 0) return LengthClass::Even;
  if (n == 1) return LengthClass::Odd;
  if (n == 2) return LengthClass::Boundary;
  const auto& tower = tower_table();
  const BigInt big(n);
  for (std::size_t t = 0; t + 1 < tower.size(); ++t)
    if (tower[t] < big && big <= tower[t + 1]) return t % 2 == 0 ? LengthClass::Even : LengthClass::Odd;
  throw invariant_error("length beyond the tower table");  // unreachable for 64-bit n
}

/// Placement of the Boundary length when L_even and L_odd are used as a
/// partition of all words.
struct LengthConvention {
  bool boundary_in_even = true;
};

inline bool in_l_even(std::uint64_t n, LengthConvention conv = {}) {
  auto c = length_class(n);
  return c == LengthClass::Even || (c == LengthClass::Boundary && conv.boundary_in_even);
}

inline bool in_l_odd(std::uint64_t n, LengthConvention conv = {}) { return !in_l_even(n, conv); }

// ---------------------------------------------------------------------------
// Registry.

namespace detail {

inline std::string normalize_id(std::string_view id) {
  static const std::pair<std::string_view, std::string_view> aliases[] = {
      {"Equal", "equal"},        {"ThreeEqual", "three-equal"}, {"EqualStar", "equal-star"},
      {"Leq", "leq"},            {"L3eq", "l3eq"},              {"Pal", "pal"},
      {"PalSharp", "pal-sharp"}, {"Dup", "dup"},                {"DupSharp", "dup-sharp"},
      {"LCenter", "l-center"},   {"LEven", "l-even"},           {"LOdd", "l-odd"},
      {"IPStar", "ip-star"},
  };
  for (auto [from, to] : aliases)
    if (id == from) return std::string(to);
  if (id.starts_with("Lkeq(") && id.ends_with(")"))
    return "l-keq:" + std::string(id.substr(5, id.size() - 6));
  return std::string(id);
}

inline std::size_t parse_keq(std::string_view id) {
  auto digits = id.substr(6);
  if (digits.empty()) throw input_error("l-keq needs k, e.g. l-keq:3");
  std::size_t k = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') throw input_error("bad k in '" + std::string(id) + "'");
    k = k * 10 + static_cast<std::size_t>(c - '0');
    if (k > 26) throw input_error("l-keq supports k <= 26");
  }
  if (k < 3) throw input_error("l-keq needs k >= 3");
  return k;
}

inline Alphabet keq_alphabet(std::size_t k) {
  std::string letters;
  for (std::size_t i = 0; i < k; ++i) letters.push_back(static_cast<char>('a' + i));
  return Alphabet(letters);
}

}  // namespace detail

/// Oracle for a language id. Ids are kebab-case (`equal-star`, `l-keq:3`);
/// the CamelCase names (`EqualStar`, `Lkeq(3)`) are accepted as aliases.
/// `sigma-star` and `empty` denote the trivial binary languages.
inline LanguageOracle oracle(std::string_view raw_id, LengthConvention conv = {}) {
  const std::string id = detail::normalize_id(raw_id);
  const Alphabet bin = Alphabet::binary();
  if (id == "equal") return {id, bin, lang::equal};
  if (id == "equal-star") return {id, bin, lang::equal_star};
  if (id == "three-equal") return {id, Alphabet("012"), lang::three_equal};
  if (id == "leq") return {id, bin, lang::leq};
  if (id == "l3eq") return {id, detail::keq_alphabet(3), [](const Word& w) { return lang::keq(w, 3); }};
  if (id.starts_with("l-keq:")) {
    std::size_t k = detail::parse_keq(id);
    return {id, detail::keq_alphabet(k), [k](const Word& w) { return lang::keq(w, k); }};
  }
  if (id == "pal") return {id, bin, lang::pal};
  if (id == "pal-sharp") return {id, Alphabet("01#"), lang::pal_sharp};
  if (id == "dup") return {id, bin, lang::dup};
  if (id == "dup-sharp") return {id, Alphabet("01#"), lang::dup_sharp};
  if (id == "l-center") return {id, bin, lang::l_center};
  if (id == "l-even") return {id, bin, [conv](const Word& w) { return in_l_even(w.size(), conv); }};
  if (id == "l-odd") return {id, bin, [conv](const Word& w) { return in_l_odd(w.size(), conv); }};
  if (id == "ip-star") return {id, bin, lang::ip_star};
  if (id == "sigma-star") return universal_language(bin);
  if (id == "empty") return empty_language(bin);
  throw input_error("unknown language id '" + std::string(raw_id) + "'");
}

// ---------------------------------------------------------------------------
// Autoreductions and advice.

/// Length-increasing self-maps preserving membership: Equal: w01,
/// Pal: 0w0, IP*: a0uv0 (a is the leading bit of an odd-length word).
inline Word autoreduce(std::string_view raw_id, const Word& w) {
  const std::string id = detail::normalize_id(raw_id);
  Alphabet::binary().check(w);
  if (id == "equal") return concat(w, Word{0, 1});
  if (id == "pal") {
    Word r{0};
    r.insert(r.end(), w.begin(), w.end());
    r.push_back(0);
    return r;
  }
  if (id == "ip-star") {
    const std::size_t skip = w.size() % 2;
    Word r(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(skip));
    r.push_back(0);
    r.insert(r.end(), w.begin() + static_cast<std::ptrdiff_t>(skip), w.end());
    r.push_back(0);
    return r;
  }
  throw input_error("no autoreduction for '" + std::string(raw_id) + "'");
}

/// Advice alphabet of the L_keq model: the k letters followed by '0'.
inline Alphabet keq_advice_alphabet(std::size_t k) {
  std::vector<std::string> names = detail::keq_alphabet(k).names();
  names.emplace_back("0");
  return Alphabet(std::move(names));
}

/// L_keq: a_1^(n/k) ... a_k^(n/k) when k divides n, else 0^n.
/// L_even: 1 0^(n-1) on lengths of L_even, else 0^n.
inline Word advice(std::string_view raw_id, std::size_t n, LengthConvention conv = {}) {
  const std::string id = detail::normalize_id(raw_id);
  if (id.starts_with("l-keq:") || id == "l3eq") {
    const std::size_t k = id == "l3eq" ? 3 : detail::parse_keq(id);
    if (n % k != 0) return Word(n, static_cast<Symbol>(k));
    Word h(n);
    for (std::size_t i = 0; i < n; ++i) h[i] = static_cast<Symbol>(i / (n / k));
    return h;
  }
  if (id == "l-even") {
    Word h(n, 0);
    if (n > 0 && in_l_even(n, conv)) h[0] = 1;
    return h;
  }
  throw input_error("no advice defined for '" + std::string(raw_id) + "'");
}

/// Advised DFA models: L_keq via the diagonal {[w over w]}; L_even via
/// {[x over 1y] : |x| = |y| + 1} plus the empty word.
inline AdvisedDfa advised_model(std::string_view raw_id, LengthConvention conv = {}) {
  const std::string id = detail::normalize_id(raw_id);
  if (id.starts_with("l-keq:") || id == "l3eq") {
    const std::size_t k = id == "l3eq" ? 3 : detail::parse_keq(id);
    Alphabet in = detail::keq_alphabet(k), adv = keq_advice_alphabet(k);
    Alphabet track = track_alphabet(in, adv);
    // state 0: all tracks so far agree (final); state 1: sink
    std::vector<State> table(2 * track.size(), 1);
    for (std::size_t s = 0; s < in.size(); ++s) table[s * adv.size() + s] = 0;
    Dfa base(track, 2, 0, std::move(table), {true, false});
    return AdvisedDfa(in, adv, std::move(base),
                      [id](std::size_t n) { return advice(id, n); });
  }
  if (id == "l-even") {
    Alphabet in = Alphabet::binary(), adv = Alphabet::binary();
    Alphabet track = track_alphabet(in, adv);
    // state 0: start (final: empty word); 1: advice began with 1; 2: sink
    std::vector<State> table(3 * track.size());
    for (Symbol x = 0; x < 2; ++x) {
      table[0 * 4 + x * 2 + 0] = 2;
      table[0 * 4 + x * 2 + 1] = 1;
      for (Symbol h = 0; h < 2; ++h) {
        table[1 * 4 + x * 2 + h] = 1;
        table[2 * 4 + x * 2 + h] = 2;
      }
    }
    Dfa base(track, 3, 0, std::move(table), {true, true, false});
    return AdvisedDfa(in, adv, std::move(base),
                      [conv](std::size_t n) { return advice("l-even", n, conv); });
  }
  throw input_error("no advised model for '" + std::string(raw_id) + "'");
}

}  // namespace cflrand

#endif  // CFLRAND_LANGUAGES_HPP
