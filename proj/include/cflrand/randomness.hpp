#ifndef CFLRAND_RANDOMNESS_HPP
#define CFLRAND_RANDOMNESS_HPP

#include "cflrand/advised.hpp"
#include "cflrand/errors.hpp"
#include "cflrand/numeric.hpp"
#include "cflrand/parallel.hpp"
#include "cflrand/word.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace cflrand {

// ---------------------------------------------------------------------------
// Swapping partitions of advised regular slices.

struct SwapPartition {
  std::size_t n = 0;
  std::size_t split = 0;
  std::vector<State> block_states;       // base state shared by each block
  std::vector<std::vector<Word>> blocks;  // words in lexicographic order
};

/// Accepted words of length n grouped by the base state reached after the
/// first `l1` track symbols. Empty blocks are omitted.
inline SwapPartition swap_partition(const AdvisedDfa& a, std::size_t n, std::size_t l1,
                                    std::uint64_t budget = default_budget()) {
  if (l1 > n) throw input_error("split point beyond word length");
  const std::size_t sigma = a.input_alphabet().size();
  const std::uint64_t total = power_saturating(sigma, n);
  require_budget(total, budget, "swap partition");
  const Word h = a.advice(n);
  const Dfa& base = a.base();
  std::map<State, std::vector<Word>> by_state;
  Word w(n, 0);
  for (std::uint64_t i = 0; i < total; ++i, next_word(w, sigma)) {
    State q = base.start(), mid = q;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == l1) mid = q;
      q = base.step(q, a.track_symbol(w[j], h[j]));
    }
    if (l1 == n) mid = q;
    if (base.is_final(q)) by_state[mid].push_back(w);
  }
  SwapPartition p{n, l1, {}, {}};
  for (auto& [q, ws] : by_state) {
    p.block_states.push_back(q);
    p.blocks.push_back(std::move(ws));
  }
  return p;
}

/// True iff every block is closed under exchanging suffixes at the split
/// point, i.e. each block is the full product of its prefixes and suffixes.
inline bool swap_verify(const SwapPartition& p) {
  for (const auto& block : p.blocks) {
    std::set<Word> prefixes, suffixes, members;
    for (const auto& w : block) {
      if (w.size() != p.n) throw input_error("block word has the wrong length");
      prefixes.insert(slice(w, 0, p.split));
      suffixes.insert(slice(w, p.split, p.n - p.split));
      members.insert(w);
    }
    if (BigInt(members.size()) != BigInt(prefixes.size()) * BigInt(suffixes.size())) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Inner-product matrix discrepancy. Rows and columns are words of length
// half_len packed into integers (first symbol most significant).

inline std::uint64_t pack_bits(const Word& w) {
  if (w.size() > 63) throw input_error("word too long to pack");
  std::uint64_t v = 0;
  for (Symbol s : w) {
    if (s > 1) throw input_error("packed words must be binary");
    v = (v << 1) | s;
  }
  return v;
}

/// #1 - #0 over the rectangle A × B of the matrix M[x][y] = x ⊙ y.
inline std::int64_t ip_imbalance(const std::vector<std::uint64_t>& a,
                                 const std::vector<std::uint64_t>& b) {
  std::int64_t d = 0;
  for (auto x : a)
    for (auto y : b) d += (std::popcount(x & y) & 1) ? 1 : -1;
  return d;
}

inline void check_half_len(std::size_t half_len) {
  if (half_len > 13) throw budget_error("discrepancy is limited to half length 13");
}

/// |#1 - #0| / 2^(2·half_len).
inline Rational ip_discrepancy(std::size_t half_len, const std::vector<std::uint64_t>& a,
                               const std::vector<std::uint64_t>& b) {
  check_half_len(half_len);
  for (auto v : a)
    if (v >> half_len) throw input_error("row index outside Σ^half_len");
  for (auto v : b)
    if (v >> half_len) throw input_error("column index outside Σ^half_len");
  std::int64_t d = ip_imbalance(a, b);
  return make_ratio(d < 0 ? -d : d, pow_int(2, 2 * half_len));
}

inline Rational ip_discrepancy(std::size_t half_len, const std::vector<Word>& a,
                               const std::vector<Word>& b) {
  std::vector<std::uint64_t> pa, pb;
  for (const auto& w : a) {
    if (w.size() != half_len) throw input_error("row word has the wrong length");
    pa.push_back(pack_bits(w));
  }
  for (const auto& w : b) {
    if (w.size() != half_len) throw input_error("column word has the wrong length");
    pb.push_back(pack_bits(w));
  }
  return ip_discrepancy(half_len, pa, pb);
}

/// Disc <= 2^(-3n/4) sqrt(|A||B|) with n = 2·half_len, decided exactly as
/// (#1 - #0)^2 <= 2^half_len |A| |B|.
inline bool discrepancy_within_bound(std::size_t half_len, const std::vector<std::uint64_t>& a,
                                     const std::vector<std::uint64_t>& b) {
  BigInt d = ip_imbalance(a, b);
  return d * d <= pow_int(2, half_len) * BigInt(a.size()) * BigInt(b.size());
}

struct DiscrepancyReport {
  std::size_t half_len = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  Rational max_disc = 0;
  double max_bound_ratio = 0;  // max of Disc / (2^(-3n/4) sqrt(|A||B|))
  std::uint64_t violations = 0;
  bool ok() const { return violations == 0; }
};

/// Random rectangles: each trial draws a density for A and for B and keeps
/// every index independently with that probability.
inline DiscrepancyReport discrepancy_bound_check(std::size_t half_len, std::uint64_t trials,
                                                 std::uint64_t seed) {
  check_half_len(half_len);
  DiscrepancyReport rep{half_len, trials, seed, 0, 0, 0};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::uint64_t side = std::uint64_t{1} << half_len;
  const double n = 2.0 * static_cast<double>(half_len);
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::vector<std::uint64_t> a, b;
    const double pa = unit(rng), pb = unit(rng);
    for (std::uint64_t x = 0; x < side; ++x)
      if (unit(rng) < pa) a.push_back(x);
    for (std::uint64_t y = 0; y < side; ++y)
      if (unit(rng) < pb) b.push_back(y);
    Rational disc = ip_discrepancy(half_len, a, b);
    if (disc > rep.max_disc) rep.max_disc = disc;
    if (!discrepancy_within_bound(half_len, a, b)) ++rep.violations;
    if (!a.empty() && !b.empty()) {
      double bound = std::pow(2.0, -0.75 * n) *
                     std::sqrt(static_cast<double>(a.size()) * static_cast<double>(b.size()));
      rep.max_bound_ratio = std::max(rep.max_bound_ratio, disc.convert_to<double>() / bound);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Window recurrences. For odd m with m0 = floor(m/2), D_j is the window
// [ceil(j/2) - m0, ceil(j/2) + m0] on the number of zeros in a length-j
// prefix. a^(k)_i counts binary words of length i whose prefixes of every
// length j in [m-1, i] respect D_j and whose zero count is
// ceil(i/2) + m0 + 1 - k.

namespace detail {

inline void require_odd_window(std::size_t m) {
  if (m < 3 || m % 2 == 0) throw input_error("window parameter m must be odd and >= 3");
}

inline std::int64_t ceil_half(std::size_t j) { return static_cast<std::int64_t>((j + 1) / 2); }

}  // namespace detail

/// Values a^(1..m)_i by enumeration of Σ^i. Index 0 of the result is k = 1.
inline std::vector<BigInt> a_brute(std::size_t m, std::size_t i,
                                   std::uint64_t budget = default_budget()) {
  detail::require_odd_window(m);
  if (i + 1 < m) throw input_error("a_brute needs i >= m - 1");
  if (i > 40) throw budget_error("a_brute limited to i <= 40");
  require_budget(std::uint64_t{1} << i, budget, "a_brute");
  const std::int64_t m0 = static_cast<std::int64_t>(m / 2);
  std::vector<BigInt> out(m, 0);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << i); ++v) {
    std::int64_t zeros = 0;
    bool ok = true;
    for (std::size_t j = 1; j <= i && ok; ++j) {
      zeros += ((v >> (i - j)) & 1) ? 0 : 1;
      if (j + 1 >= m) {
        std::int64_t c = detail::ceil_half(j);
        ok = zeros >= c - m0 && zeros <= c + m0;
      }
    }
    if (!ok) continue;
    std::int64_t k = detail::ceil_half(i) + m0 + 1 - zeros;
    if (k >= 1 && k <= static_cast<std::int64_t>(m)) out[static_cast<std::size_t>(k - 1)] += 1;
  }
  return out;
}

struct RecurrenceTable {
  std::size_t m = 0;
  std::size_t first = 0;                // index of rows[0]
  std::vector<std::vector<BigInt>> rows;  // rows[i - first][k - 1]

  std::size_t last() const { return first + rows.size() - 1; }
  bool has(std::size_t i) const { return i >= first && i - first < rows.size(); }

  const BigInt& a(std::size_t k, std::size_t i) const {
    if (k < 1 || k > m || !has(i)) throw input_error("recurrence index outside the table");
    return rows[i - first][k - 1];
  }

  BigInt sum(std::size_t i) const {
    if (!has(i)) throw input_error("recurrence index outside the table");
    BigInt s = 0;
    for (const auto& v : rows[i - first]) s += v;
    return s;
  }
};

/// Table for i in [m-1, i_max]. The base row comes from enumeration; odd rows
/// past m follow the two-step rule
///   a^(1)_{2i+1} = a^(1)_{2i-1} + a^(2)_{2i-1}
///   a^(k+1)_{2i+1} = a^(k)_{2i-1} + 2 a^(k+1)_{2i-1} + a^(k+2)_{2i-1}
/// (entries outside 1..m are zero), row m and the even rows follow the
/// single-step rules that compose into it.
inline RecurrenceTable a_table(std::size_t m, std::size_t i_max) {
  detail::require_odd_window(m);
  if (i_max + 1 < m) throw input_error("a_table needs i_max >= m - 1");
  RecurrenceTable t{m, m - 1, {}};
  t.rows.push_back(a_brute(m, m - 1));
  auto at = [&](const std::vector<BigInt>& row, std::size_t k) -> BigInt {
    return k >= 1 && k <= m ? row[k - 1] : BigInt(0);
  };
  for (std::size_t i = m; i <= i_max; ++i) {
    const auto& prev = t.rows.back();
    std::vector<BigInt> row(m);
    if (i % 2 == 0) {
      for (std::size_t k = 1; k <= m; ++k) row[k - 1] = at(prev, k) + at(prev, k + 1);
    } else if (i == m) {
      for (std::size_t k = 1; k <= m; ++k) row[k - 1] = at(prev, k - 1) + at(prev, k);
    } else {
      const auto& odd = t.rows[i - 2 - t.first];
      row[0] = at(odd, 1) + at(odd, 2);
      for (std::size_t k = 1; k < m; ++k)
        row[k] = at(odd, k) + 2 * at(odd, k + 1) + at(odd, k + 2);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

struct GrowthFit {
  double estimate = 0;       // per-symbol growth factor exp(slope)
  double two_step = 0;       // estimate^2, comparable with 3 + γ
  Rational two_step_bound;   // 3 + γ with γ = 1/(1/δ + 1), δ = 2^(2 m0 - 1) - 1
  std::size_t points = 0;
  bool below_two() const { return estimate < 2.0; }
};

inline BigInt delta_j(std::size_t j) { return pow_int(2, 2 * j + 1) - 1; }

inline Rational gamma_bound(std::size_t m) {
  const std::size_t m0 = m / 2;
  if (m0 == 0) throw input_error("window parameter too small");
  Rational delta(delta_j(m0 - 1));
  return Rational(3) + delta / (delta + 1);
}

/// Least-squares slope of ln S[i] against i over the odd indices of the upper
/// half of the table.
inline GrowthFit growth_fit(const RecurrenceTable& t) {
  const std::size_t lo = t.first + (t.last() - t.first) / 2;
  std::vector<double> xs, ys;
  for (std::size_t i = lo; i <= t.last(); ++i) {
    if (i % 2 == 0) continue;
    BigInt s = t.sum(i);
    if (s <= 0) throw input_error("growth fit needs positive sums");
    xs.push_back(static_cast<double>(i));
    ys.push_back(std::log(s.convert_to<double>()));
  }
  if (xs.size() < 2) throw input_error("growth fit needs at least two odd indices");
  double mx = 0, my = 0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    mx += xs[j];
    my += ys[j];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxy = 0, sxx = 0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    sxy += (xs[j] - mx) * (ys[j] - my);
    sxx += (xs[j] - mx) * (xs[j] - mx);
  }
  GrowthFit g;
  g.estimate = std::exp(sxy / sxx);
  g.two_step = g.estimate * g.estimate;
  g.points = xs.size();
  if (t.m >= 3 && t.m % 2 == 1) g.two_step_bound = gamma_bound(t.m);
  return g;
}

/// S[2i+1] <= (3 + γ) S[2i-1] for every consecutive odd pair in the table.
inline bool s_growth_check(const RecurrenceTable& t) {
  const Rational bound = gamma_bound(t.m);
  for (std::size_t i = t.first; i + 2 <= t.last(); ++i) {
    if (i % 2 == 0) continue;
    if (Rational(t.sum(i + 2)) > bound * Rational(t.sum(i))) return false;
  }
  return true;
}

/// For every i in [i_lo, i_hi] and j in [j_lo, j_hi]:
///   sum_{k=m0+1-j}^{m0+1+j} a^(k)_{2i+1} <= δ_j (a^(m0-j)_{2i+1} + a^(m0+j+2)_{2i+1}).
inline bool delta_check(std::size_t m, std::size_t i_lo, std::size_t i_hi, std::size_t j_lo,
                        std::size_t j_hi) {
  detail::require_odd_window(m);
  const std::size_t m0 = m / 2;
  if (j_hi + 1 > m0) throw input_error("delta_check needs j <= m0 - 1");
  if (2 * i_lo + 1 + 1 < m) throw input_error("delta_check needs 2i+1 >= m - 1");
  if (i_lo > i_hi || j_lo > j_hi) throw input_error("empty range");
  RecurrenceTable t = a_table(m, 2 * i_hi + 1);
  for (std::size_t i = i_lo; i <= i_hi; ++i)
    for (std::size_t j = j_lo; j <= j_hi; ++j) {
      const std::size_t r = 2 * i + 1;
      BigInt lhs = 0;
      for (std::size_t k = m0 + 1 - j; k <= m0 + 1 + j; ++k) lhs += t.a(k, r);
      if (lhs > delta_j(j) * (t.a(m0 - j, r) + t.a(m0 + j + 2, r))) return false;
    }
  return true;
}

/// Sets E_i ⊆ [0, i] of size m for i in [m-1, n]; sets[i - (m-1)] is E_i.
struct MIndexSeries {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> sets;

  void validate() const {
    if (m == 0 || n + 1 < m) throw input_error("m-index series needs 1 <= m <= n + 1");
    if (sets.size() != n + 2 - m) throw input_error("m-index series has the wrong number of sets");
    for (std::size_t idx = 0; idx < sets.size(); ++idx) {
      const std::size_t i = idx + m - 1;
      std::set<std::size_t> uniq(sets[idx].begin(), sets[idx].end());
      if (uniq.size() != m || sets[idx].size() != m)
        throw input_error("E_" + std::to_string(i) + " must have exactly m distinct elements");
      if (*uniq.rbegin() > i) throw input_error("E_" + std::to_string(i) + " leaves [0, i]");
    }
  }

  const std::vector<std::size_t>& at(std::size_t i) const { return sets.at(i + 1 - m); }
};

/// The centred series D with D_i = [ceil(i/2) - m0, ceil(i/2) + m0].
inline MIndexSeries centered_series(std::size_t m, std::size_t n) {
  detail::require_odd_window(m);
  if (n + 1 < m) throw input_error("series needs n >= m - 1");
  MIndexSeries e{m, n, {}};
  for (std::size_t i = m - 1; i <= n; ++i) {
    std::vector<std::size_t> d;
    const std::size_t c = (i + 1) / 2;
    for (std::size_t z = c - m / 2; z <= c + m / 2; ++z) d.push_back(z);
    e.sets.push_back(std::move(d));
  }
  return e;
}

/// |T_{E,n}|: words of length n whose zero count at every prefix length
/// i in [m-1, n] lies in E_i.
inline BigInt t_count(const MIndexSeries& e) {
  e.validate();
  std::vector<BigInt> ways(1, 1);  // ways[z] for the current prefix length
  for (std::size_t j = 1; j <= e.n; ++j) {
    std::vector<BigInt> next(j + 1, 0);
    for (std::size_t z = 0; z < ways.size(); ++z) {
      if (ways[z] == 0) continue;
      next[z] += ways[z];      // append 1
      next[z + 1] += ways[z];  // append 0
    }
    if (j + 1 >= e.m) {
      std::vector<bool> allowed(j + 1, false);
      for (auto z : e.at(j)) allowed[z] = true;
      for (std::size_t z = 0; z <= j; ++z)
        if (!allowed[z]) next[z] = 0;
    }
    ways.swap(next);
  }
  BigInt total = 0;
  for (const auto& v : ways) total += v;
  return total;
}

/// t_count(E) <= S[n] where S comes from the recurrence table of E.m.
inline bool max_choice_check(const MIndexSeries& e) {
  detail::require_odd_window(e.m);
  return t_count(e) <= a_table(e.m, e.n).sum(e.n);
}

}  // namespace cflrand

#endif  // CFLRAND_RANDOMNESS_HPP
