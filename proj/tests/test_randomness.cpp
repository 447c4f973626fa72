#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace cflrand;
using ref::bits;

namespace {

/// Every pair of words in a block, with suffixes exchanged at the split,
/// lands back in the same block.
bool pairwise_closed(const SwapPartition& p) {
  for (const auto& block : p.blocks) {
    std::set<Word> members(block.begin(), block.end());
    for (const auto& u : block)
      for (const auto& v : block) {
        Word s = slice(u, 0, p.split);
        Word t = slice(v, p.split, p.n - p.split);
        if (!members.count(concat(s, t))) return false;
      }
  }
  return true;
}

std::vector<std::uint64_t> all_indices(std::size_t h) {
  std::vector<std::uint64_t> v;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << h); ++x) v.push_back(x);
  return v;
}

/// Words of length n whose zero count at each prefix j >= m-1 lies in E_j.
std::uint64_t t_brute(const MIndexSeries& e) {
  std::uint64_t c = 0;
  for (const auto& w : ref::all_words(2, e.n)) {
    std::size_t zeros = 0;
    bool ok = true;
    for (std::size_t j = 1; j <= e.n && ok; ++j) {
      zeros += w[j - 1] == 0;
      if (j + 1 >= e.m) {
        const auto& s = e.at(j);
        ok = std::find(s.begin(), s.end(), zeros) != s.end();
      }
    }
    c += ok;
  }
  return c;
}

}  // namespace

TEST_CASE("swap partitions of the advised models", "[swap]") {
  for (const char* id : {"l-keq:3", "l-even"}) {
    AdvisedDfa a = advised_model(id);
    auto l = oracle(id);
    const std::size_t sigma = a.input_alphabet().size();
    const std::size_t top = sigma == 2 ? 12 : 9;
    for (std::size_t n = 0; n <= top; ++n) {
      std::uint64_t accepted = 0;
      for (const auto& w : ref::all_words(sigma, n)) accepted += l.member(w);
      for (std::size_t split = 0; split <= n; ++split) {
        auto p = swap_partition(a, n, split);
        CHECK(swap_verify(p));
        std::set<Word> seen;
        for (const auto& block : p.blocks)
          for (const auto& w : block) {
            CHECK(l.member(w));
            CHECK(seen.insert(w).second);
          }
        CHECK(seen.size() == accepted);
        if (n <= 10) CHECK(pairwise_closed(p));
      }
    }
  }
}

TEST_CASE("swap verification rejects merged blocks", "[swap]") {
  SwapPartition p{2, 1, {0}, {{bits("00"), bits("11")}}};
  CHECK_FALSE(swap_verify(p));
  CHECK_FALSE(pairwise_closed(p));
  SwapPartition singles{2, 1, {0, 1}, {{bits("00")}, {bits("11")}}};
  CHECK(swap_verify(singles));
  SwapPartition full{2, 1, {0}, {{bits("00"), bits("01"), bits("10"), bits("11")}}};
  CHECK(swap_verify(full));
}

TEST_CASE("swap partition argument checks", "[swap]") {
  AdvisedDfa a = advised_model("l-even");
  CHECK_THROWS_AS(swap_partition(a, 4, 5), input_error);
  CHECK_THROWS_AS(swap_partition(a, 12, 3, 100), budget_error);
}

TEST_CASE("inner-product discrepancy small cases", "[disc]") {
  CHECK(ip_discrepancy(1, std::vector<std::uint64_t>{0, 1}, std::vector<std::uint64_t>{0, 1}) ==
        Rational(1, 2));
  CHECK(ip_discrepancy(1, std::vector<Word>{bits("0"), bits("1")},
                       std::vector<Word>{bits("0"), bits("1")}) == Rational(1, 2));
  for (std::size_t h = 1; h <= 6; ++h)
    CHECK(ip_discrepancy(h, std::vector<std::uint64_t>{1}, std::vector<std::uint64_t>{3 % (1u << h)}) ==
          make_ratio(1, pow_int(2, 2 * h)));
  auto full = all_indices(4);
  Rational d = ip_discrepancy(4, full, full);
  CHECK(d <= Rational(1, 4));
  CHECK(d == Rational(1, 16));
  CHECK(ip_discrepancy(4, {}, full) == 0);
  CHECK_THROWS_AS(ip_discrepancy(2, std::vector<std::uint64_t>{4}, full), input_error);
  CHECK_THROWS_AS(ip_discrepancy(14, full, full), budget_error);
}

TEST_CASE("discrepancy matches a direct count", "[disc]") {
  std::mt19937_64 rng(7);
  for (std::size_t h = 1; h <= 5; ++h)
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Word> a, b;
      for (const auto& w : ref::all_words(2, h)) {
        if (rng() & 1) a.push_back(w);
        if (rng() & 1) b.push_back(w);
      }
      long d = 0;
      for (const auto& x : a)
        for (const auto& y : b) {
          int p = 0;
          for (std::size_t i = 0; i < h; ++i) p += x[i] * y[i];
          d += p % 2 ? 1 : -1;
        }
      CHECK(ip_discrepancy(h, a, b) == make_ratio(d < 0 ? -d : d, pow_int(2, 2 * h)));
    }
}

TEST_CASE("random rectangles respect the discrepancy bound", "[disc]") {
  auto rep = discrepancy_bound_check(6, 200, 11);
  CHECK(rep.ok());
  CHECK(rep.max_bound_ratio <= 1.0);
  auto again = discrepancy_bound_check(6, 200, 11);
  CHECK(again.max_disc == rep.max_disc);
  CHECK(again.max_bound_ratio == rep.max_bound_ratio);
  auto none = discrepancy_bound_check(6, 0, 11);
  CHECK(none.ok());
  CHECK(none.max_disc == 0);
  for (std::size_t h = 1; h <= 5; ++h) {
    auto full = all_indices(h);
    CHECK(discrepancy_within_bound(h, full, full));
  }
}

TEST_CASE("recurrence table matches the window count", "[recur]") {
  for (std::size_t m : {3u, 5u, 7u}) {
    auto t = a_table(m, 15);
    for (std::size_t i = m - 1; i <= 15; ++i) {
      auto want = ref::window_counts(m, i);
      for (std::size_t k = 1; k <= m; ++k) CHECK(t.a(k, i) == want[k - 1]);
    }
  }
  auto t5 = a_table(5, 6);
  std::vector<BigInt> row6{6, 15, 20, 15, 5};
  for (std::size_t k = 1; k <= 5; ++k) CHECK(t5.a(k, 6) == row6[k - 1]);
  CHECK_FALSE(t5.has(7));
  auto t = a_table(5, 14);
  for (std::size_t i = 4; i <= 14; ++i) CHECK(a_brute(5, i) == t.rows[i - t.first]);
}

TEST_CASE("recurrence argument checks", "[recur]") {
  CHECK_THROWS_AS(a_table(4, 10), input_error);
  CHECK_THROWS_AS(a_table(1, 10), input_error);
  CHECK_THROWS_AS(a_brute(5, 3), input_error);
  CHECK_THROWS_AS(a_table(5, 10).a(6, 8), input_error);
  CHECK_THROWS_AS(a_table(5, 10).a(1, 11), input_error);
}

TEST_CASE("growth of the window sums", "[recur]") {
  double prev = 0;
  for (std::size_t m : {3u, 5u, 7u}) {
    auto fit = growth_fit(a_table(m, 25));
    CHECK(fit.below_two());
    CHECK(fit.estimate > prev);
    CHECK(fit.two_step <= fit.two_step_bound.convert_to<double>());
    prev = fit.estimate;
    CHECK(s_growth_check(a_table(m, 25)));
  }
  RecurrenceTable flat{3, 2, std::vector<std::vector<BigInt>>(12, std::vector<BigInt>{1, 1, 1})};
  CHECK(growth_fit(flat).estimate == Catch::Approx(1.0));
}

TEST_CASE("delta constants and inequality", "[recur]") {
  CHECK(delta_j(0) == 1);
  CHECK(delta_j(1) == 7);
  CHECK(delta_j(2) == 31);
  CHECK(delta_check(5, 2, 10, 0, 1));
  CHECK(delta_check(7, 3, 12, 0, 2));
  CHECK_THROWS_AS(delta_check(5, 2, 10, 0, 2), input_error);
}

TEST_CASE("T count of the centred series is the window sum", "[recur]") {
  for (std::size_t m : {3u, 5u})
    for (std::size_t n = m - 1; n <= 14; ++n) {
      auto e = centered_series(m, n);
      CHECK(t_count(e) == a_table(m, n).sum(n));
      CHECK(t_count(e) == t_brute(e));
      CHECK(max_choice_check(e));
    }
}

TEST_CASE("T count of arbitrary series", "[recur]") {
  std::mt19937_64 rng(3);
  for (std::size_t m : {3u, 5u})
    for (int trial = 0; trial < 25; ++trial) {
      const std::size_t n = m + rng() % 8;
      MIndexSeries e{m, n, {}};
      for (std::size_t i = m - 1; i <= n; ++i) {
        std::vector<std::size_t> pool(i + 1);
        std::iota(pool.begin(), pool.end(), 0);
        std::shuffle(pool.begin(), pool.end(), rng);
        pool.resize(m);
        e.sets.push_back(pool);
      }
      CHECK(t_count(e) == t_brute(e));
      CHECK(max_choice_check(e));
    }
  // the lowest window: at most two zeros at every prefix
  MIndexSeries low{3, 10, std::vector<std::vector<std::size_t>>(9, {0, 1, 2})};
  CHECK(t_count(low) == 56);
  CHECK(t_count(low) < t_count(centered_series(3, 10)));

  MIndexSeries bad{3, 5, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}};
  CHECK_THROWS_AS(t_count(bad), input_error);
  MIndexSeries dup{3, 3, {{0, 1, 1}, {0, 1, 2}}};
  CHECK_THROWS_AS(t_count(dup), input_error);
  MIndexSeries wide{3, 3, {{0, 1, 3}, {0, 1, 2}}};
  CHECK_THROWS_AS(t_count(wide), input_error);
}
