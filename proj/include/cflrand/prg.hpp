#ifndef CFLRAND_PRG_HPP
#define CFLRAND_PRG_HPP

#include "cflrand/advised.hpp"
#include "cflrand/dfa.hpp"
#include "cflrand/errors.hpp"
#include "cflrand/languages.hpp"
#include "cflrand/numeric.hpp"
#include "cflrand/parallel.hpp"
#include "cflrand/pda.hpp"
#include "cflrand/probe.hpp"
#include "cflrand/word.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace cflrand {

/// The stretch-by-one generator. For odd |w| = 2k+1 write w = b z y with
/// |z| = |y| = k and p = z^R ⊙ y:
///   p = 1                  -> b z y (1-b)
///   p = 0, b = 1           -> 1 z y 1
///   p = 0, b = 0, z ≠ 0^k  -> 0 z y' 0, y' flips y_i for the least i with z_{k-i+1} = 1
///   p = 0, b = 0, z = 0^k  -> 1 z y 1
/// Even lengths keep their first symbol and recurse on the rest.
inline Word g_generate(const Word& w) {
  if (w.empty()) throw std::domain_error("G is undefined on the empty word");
  Alphabet::binary().check(w);
  if (w.size() % 2 == 0) {
    Word out{w[0]};
    Word tail = g_generate(Word(w.begin() + 1, w.end()));
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
  }
  const std::size_t k = w.size() / 2;
  const Symbol b = w[0];
  // z = w[1..k], y = w[k+1..2k]
  int p = 0;
  for (std::size_t i = 1; i <= k; ++i) p ^= w[1 + k - i] & w[k + i];
  Word out = w;
  if (p == 1) {
    out.push_back(static_cast<Symbol>(1 - b));
    return out;
  }
  if (b == 1) {
    out.push_back(1);
    return out;
  }
  for (std::size_t i = 1; i <= k; ++i)
    if (w[1 + k - i] == 1) {
      out[k + i] ^= 1;
      out.push_back(0);
      return out;
    }
  out[0] = 1;
  out.push_back(1);
  return out;
}

namespace detail {

/// G on a word packed MSB-first into the low n bits.
inline std::uint64_t g_packed(std::uint64_t x, std::size_t n) {
  Word w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<Symbol>((x >> (n - 1 - i)) & 1);
  Word g = g_generate(w);
  std::uint64_t v = 0;
  for (Symbol s : g) v = (v << 1) | s;
  return v;
}

inline void require_seed_len(std::size_t n, std::uint64_t budget) {
  if (n == 0) throw std::domain_error("G is undefined on the empty word");
  if (n > 30) throw budget_error("seed length limited to 30");
  require_budget(std::uint64_t{1} << n, budget, "seed enumeration");
}

inline Word unpack(std::uint64_t v, std::size_t len) {
  Word w(len);
  for (std::size_t i = 0; i < len; ++i) w[i] = static_cast<Symbol>((v >> (len - 1 - i)) & 1);
  return w;
}

}  // namespace detail

/// G(x) for every x in Σ^n, packed, indexed by x.
inline std::vector<std::uint64_t> g_images(std::size_t n, unsigned workers = default_workers(),
                                           std::uint64_t budget = default_budget()) {
  detail::require_seed_len(n, budget);
  std::vector<std::uint64_t> img(std::uint64_t{1} << n);
  for_each_chunk(img.size(), workers, [&](std::uint64_t, std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t x = b; x < e; ++x) img[x] = detail::g_packed(x, n);
  });
  return img;
}

/// Sorted distinct images of Σ^n, packed over n+1 bits.
inline std::vector<std::uint64_t> g_range_codes(std::size_t n, unsigned workers = default_workers(),
                                                std::uint64_t budget = default_budget()) {
  auto img = g_images(n, workers, budget);
  std::sort(img.begin(), img.end());
  img.erase(std::unique(img.begin(), img.end()), img.end());
  return img;
}

inline std::vector<Word> g_range(std::size_t n, unsigned workers = default_workers(),
                                 std::uint64_t budget = default_budget()) {
  std::vector<Word> out;
  for (auto v : g_range_codes(n, workers, budget)) out.push_back(detail::unpack(v, n + 1));
  return out;
}

/// preimage size -> number of range points with that many preimages.
inline std::map<std::uint64_t, std::uint64_t> g_preimage_census(
    std::size_t n, unsigned workers = default_workers(), std::uint64_t budget = default_budget()) {
  auto img = g_images(n, workers, budget);
  std::sort(img.begin(), img.end());
  std::map<std::uint64_t, std::uint64_t> hist;
  for (std::size_t i = 0; i < img.size();) {
    std::size_t j = i;
    while (j < img.size() && img[j] == img[i]) ++j;
    ++hist[j - i];
    i = j;
  }
  return hist;
}

/// Range of G on Σ^n equals IP* ∩ Σ^(n+1).
inline bool g_range_equals_ip(std::size_t n, unsigned workers = default_workers(),
                              std::uint64_t budget = default_budget()) {
  auto range = g_range_codes(n, workers, budget);
  std::vector<std::uint64_t> ip;
  for (std::uint64_t y = 0; y < (std::uint64_t{2} << n); ++y)
    if (lang::ip_star(detail::unpack(y, n + 1))) ip.push_back(y);
  return range == ip;
}

/// 2^n - 2^ceil((n-1)/2).
inline BigInt g_expected_range_size(std::size_t n) {
  return pow_int(2, n) - pow_int(2, n / 2);
}

struct GeneratorRow {
  std::size_t n;
  BigInt range_size;
  Rational tau;  // 1 - range_size / 2^n
  std::map<std::uint64_t, std::uint64_t> histogram;
  bool range_equals_ip;
};

inline GeneratorRow generator_row(std::size_t n, unsigned workers = default_workers(),
                                  std::uint64_t budget = default_budget()) {
  GeneratorRow r{n, 0, 0, g_preimage_census(n, workers, budget),
                 g_range_equals_ip(n, workers, budget)};
  for (auto [size, count] : r.histogram) r.range_size += count;
  r.tau = Rational(1) - make_ratio(r.range_size, pow_int(2, n));
  return r;
}

// ---------------------------------------------------------------------------
// Fooling statistics.

namespace detail {

/// Multiplicity of each y ∈ Σ^(n+1) as an image of G on Σ^n.
inline std::vector<std::uint8_t> g_multiplicity(std::size_t n, unsigned workers,
                                                std::uint64_t budget) {
  std::vector<std::uint8_t> mult(std::uint64_t{2} << n, 0);
  for (auto y : g_images(n, workers, budget)) ++mult[y];
  return mult;
}

/// Final state of the run on each packed word of Σ^len, computed by splitting
/// the word into a prefix and a suffix table.
inline std::vector<State> run_all(const Dfa& d, std::size_t len) {
  const std::size_t lo = len / 2, hi = len - lo;  // prefix hi bits, suffix lo bits
  std::vector<State> after_prefix(std::uint64_t{1} << hi);
  for (std::uint64_t p = 0; p < after_prefix.size(); ++p)
    after_prefix[p] = d.run_from(d.start(), unpack(p, hi));
  std::vector<State> suffix(d.size() << lo);
  for (State q = 0; q < d.size(); ++q)
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << lo); ++s)
      suffix[(std::uint64_t{q} << lo) | s] = d.run_from(q, unpack(s, lo));
  std::vector<State> out(std::uint64_t{1} << len);
  for (std::uint64_t y = 0; y < out.size(); ++y) {
    State q = after_prefix[y >> lo];
    out[y] = suffix[(std::uint64_t{q} << lo) | (y & ((std::uint64_t{1} << lo) - 1))];
  }
  return out;
}

inline Rational fool_from_acceptance(const std::vector<std::uint8_t>& mult,
                                     const std::vector<std::uint8_t>& acc, std::size_t n) {
  std::uint64_t on_range = 0, uniform = 0;
  for (std::size_t y = 0; y < acc.size(); ++y)
    if (acc[y]) {
      on_range += mult[y];
      ++uniform;
    }
  // on_range / 2^n - uniform / 2^(n+1)
  BigInt diff = BigInt(2) * BigInt(on_range) - BigInt(uniform);
  if (diff < 0) diff = -diff;
  return make_ratio(diff, pow_int(2, n + 1));
}

}  // namespace detail

/// Precomputed image multiplicities, reusable across distinguishers.
class FoolingHarness {
 public:
  explicit FoolingHarness(std::size_t n, unsigned workers = default_workers(),
                          std::uint64_t budget = default_budget())
      : n_(checked(n)), mult_(detail::g_multiplicity(n, workers, budget)) {}

  std::size_t n() const noexcept { return n_; }

  Rational stat(const Dfa& d) const {
    if (!(d.alphabet() == Alphabet::binary())) throw input_error("distinguisher must be binary");
    auto finals = detail::run_all(d, n_ + 1);
    std::vector<std::uint8_t> acc(finals.size());
    for (std::size_t y = 0; y < finals.size(); ++y) acc[y] = d.is_final(finals[y]);
    return detail::fool_from_acceptance(mult_, acc, n_);
  }

  Rational stat(const AdvisedDfa& a) const {
    if (!(a.input_alphabet() == Alphabet::binary()))
      throw input_error("distinguisher must be binary");
    std::vector<std::uint8_t> acc(mult_.size());
    for (std::uint64_t y = 0; y < acc.size(); ++y)
      acc[y] = accepts(a, detail::unpack(y, n_ + 1));
    return detail::fool_from_acceptance(mult_, acc, n_);
  }

 private:
  static std::size_t checked(std::size_t n) {
    if (n > 20) throw budget_error("fooling statistics are exact only up to n = 20");
    return n;
  }

  std::size_t n_;
  std::vector<std::uint8_t> mult_;
};

/// |Prob_x[A(G(x))] - Prob_y[A(y)]| with x ∈ Σ^n, y ∈ Σ^(n+1) uniform.
inline Rational fool_stat(const Dfa& d, std::size_t n) { return FoolingHarness(n).stat(d); }
inline Rational fool_stat(const AdvisedDfa& a, std::size_t n) { return FoolingHarness(n).stat(a); }

struct FoolingRow {
  std::size_t n;
  std::size_t machine;  // index in the enumeration order
  Rational ell;
};

struct FoolingSuite {
  std::vector<Dfa> machines;
  std::vector<FoolingRow> rows;
  std::map<std::size_t, Rational> max_by_n;
  std::map<std::size_t, std::size_t> argmax_by_n;
};

inline FoolingSuite fool_suite(std::size_t max_states, std::size_t n_lo, std::size_t n_hi,
                               unsigned workers = default_workers()) {
  if (n_lo > n_hi) throw input_error("empty length range");
  FoolingSuite s;
  s.machines = enum_dfas(max_states, Alphabet::binary());
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    FoolingHarness h(n, workers);
    std::vector<Rational> ell(s.machines.size());
    for_each_chunk(s.machines.size(), workers,
                   [&](std::uint64_t, std::uint64_t b, std::uint64_t e) {
                     for (std::uint64_t i = b; i < e; ++i) ell[i] = h.stat(s.machines[i]);
                   });
    Rational best = 0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < ell.size(); ++i) {
      if (ell[i] > best) {
        best = ell[i];
        arg = i;
      }
      s.rows.push_back({n, i, ell[i]});
    }
    s.max_by_n[n] = best;
    s.argmax_by_n[n] = arg;
  }
  return s;
}

/// ℓ <= c · 2^(-n/4), decided exactly as ℓ^4 · 2^n <= c^4.
inline bool within_fooling_bound(const Rational& ell, std::size_t n, unsigned c = 8) {
  Rational lhs = ell * ell * ell * ell * Rational(pow_int(2, n));
  return lhs <= Rational(pow_int(c, 4));
}

// ---------------------------------------------------------------------------
// G as a pushdown transducer.

/// Nondeterministic transducer whose only accepting path on w outputs G(w).
/// It optionally copies a leading symbol, then guesses one of three branches
/// for the odd-length core b z y: plain copy (final bit from b and the
/// parity), the flip branch (b = 0, flips y at the first 1 of z read from
/// the right), and the z = 0^k branch (leading bit rewritten to 1). z is kept
/// on the stack; popping it while reading y pairs z_{k-i+1} with y_i.
inline Pda g_transducer() {
  const StackSymbol Z = 0;
  auto stk = [](Symbol s) { return static_cast<StackSymbol>(s + 1); };
  // states
  const State start = 0, core = 1;
  auto copy_push = [](Symbol b) { return static_cast<State>(2 + b); };  // 2, 3
  const State flip_push = 4, zero_push = 5;
  auto copy_pop = [](Symbol b, int p) { return static_cast<State>(6 + 2 * b + p); };  // 6..9
  auto flip_pop = [](int f, int p) { return static_cast<State>(10 + 2 * f + p); };    // 10..13
  const State zero_pop = 14, accept = 15;
  const std::vector<StackSymbol> tops{Z, stk(0), stk(1)};

  std::vector<PdaTransition> t;
  t.push_back({start, std::nullopt, Z, core, {Z}, {}});
  for (Symbol a : {Symbol{0}, Symbol{1}}) t.push_back({start, a, Z, core, {Z}, {a}});

  for (Symbol b : {Symbol{0}, Symbol{1}}) t.push_back({core, b, Z, copy_push(b), {Z}, {b}});
  t.push_back({core, Symbol{0}, Z, flip_push, {Z}, {0}});
  t.push_back({core, Symbol{0}, Z, zero_push, {Z}, {1}});

  for (StackSymbol top : tops) {
    for (Symbol s : {Symbol{0}, Symbol{1}}) {
      for (Symbol b : {Symbol{0}, Symbol{1}})
        t.push_back({copy_push(b), s, top, copy_push(b), {stk(s), top}, {s}});
      t.push_back({flip_push, s, top, flip_push, {stk(s), top}, {s}});
    }
    t.push_back({zero_push, Symbol{0}, top, zero_push, {stk(0), top}, {0}});
    // guess the middle
    for (Symbol b : {Symbol{0}, Symbol{1}})
      t.push_back({copy_push(b), std::nullopt, top, copy_pop(b, 0), {top}, {}});
    t.push_back({flip_push, std::nullopt, top, flip_pop(0, 0), {top}, {}});
    t.push_back({zero_push, std::nullopt, top, zero_pop, {top}, {}});
  }

  for (Symbol zs : {Symbol{0}, Symbol{1}})
    for (Symbol v : {Symbol{0}, Symbol{1}}) {
      const int prod = zs & v;
      for (Symbol b : {Symbol{0}, Symbol{1}})
        for (int p : {0, 1})
          t.push_back({copy_pop(b, p), v, stk(zs), copy_pop(b, p ^ prod), {}, {v}});
      for (int f : {0, 1})
        for (int p : {0, 1}) {
          const bool flip_here = f == 0 && zs == 1;
          const Symbol out = flip_here ? static_cast<Symbol>(1 - v) : v;
          t.push_back({flip_pop(f, p), v, stk(zs), flip_pop(f | zs, p ^ prod), {}, {out}});
        }
      if (zs == 0) t.push_back({zero_pop, v, stk(0), zero_pop, {}, {v}});
    }

  for (Symbol b : {Symbol{0}, Symbol{1}}) {
    t.push_back({copy_pop(b, 1), std::nullopt, Z, accept, {Z}, {static_cast<Symbol>(1 - b)}});
    if (b == 1) t.push_back({copy_pop(b, 0), std::nullopt, Z, accept, {Z}, {1}});
  }
  t.push_back({flip_pop(1, 0), std::nullopt, Z, accept, {Z}, {0}});
  t.push_back({zero_pop, std::nullopt, Z, accept, {Z}, {1}});

  std::vector<bool> finals(16, false);
  finals[accept] = true;
  return Pda(Alphabet::binary(), Alphabet("Z01"), 16, start, Z, std::move(finals), std::move(t));
}

}  // namespace cflrand

#endif  // CFLRAND_PRG_HPP
