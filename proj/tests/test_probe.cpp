#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <set>

using namespace cflrand;
using ref::bits;

namespace {

bool same_language(const Dfa& a, const Dfa& b, std::size_t up_to) {
  for (const auto& w : ref::words_up_to(a.sigma(), up_to))
    if (accepts(a, w) != accepts(b, w)) return false;
  return true;
}

/// Σ* # Σ* over {0,1,#}: 0 before the marker, 1 after it, 2 sink.
Dfa one_marker() {
  Alphabet a("01#");
  return Dfa(a, 3, 0, {0, 0, 1, 1, 1, 2, 2, 2, 2}, {false, true, false});
}

}  // namespace

TEST_CASE("enumeration sizes", "[probe]") {
  CHECK(enum_dfas(1, Alphabet::binary()).size() == 2);
  // two states: every table except the four that keep state 0 closed
  CHECK(enum_dfas(2, Alphabet::binary()).size() == 2 + 12 * 4);
}

TEST_CASE("enumerated machines are canonical and distinct", "[probe]") {
  auto all = enum_dfas(3, Alphabet::binary());
  std::set<std::pair<std::vector<State>, std::vector<bool>>> seen;
  for (const auto& d : all) {
    CHECK(canonicalize(d) == d);
    CHECK(seen.emplace(d.table(), d.finals()).second);
  }
}

TEST_CASE("minimal forms of enumerated machines separate their languages", "[probe]") {
  // two machines with at most 3 states that differ disagree on some word
  // shorter than 9, so acceptance signatures up to length 8 count languages
  auto all = enum_dfas(3, Alphabet::binary());
  auto words = ref::words_up_to(2, 8);
  std::set<std::pair<std::vector<State>, std::vector<bool>>> minimal;
  std::set<std::vector<bool>> signatures;
  for (const auto& d : all) {
    Dfa m = minimize(d);
    minimal.emplace(m.table(), m.finals());
    std::vector<bool> sig;
    for (const auto& w : words) sig.push_back(ref::dfa_accepts(d, w));
    signatures.insert(std::move(sig));
  }
  CHECK(minimal.size() == signatures.size());
  Dfa c = minimize(cycle_dfa(Alphabet::binary(), bits("01")));
  CHECK(c.size() == 3);
  CHECK(minimal.count({c.table(), c.finals()}) == 1);
}

TEST_CASE("no two-state machine gives an infinite subset of Equal", "[probe]") {
  for (const auto& d : enum_dfas(2, Alphabet::binary())) {
    if (!is_infinite(d)) continue;
    CHECK(subset_witness(d, oracle("equal"), 10, 1'000'000).verdict == SubsetVerdict::Counterexample);
  }
}

TEST_CASE("enumeration budget", "[probe]") {
  CHECK_THROWS_AS(enum_dfas(4, Alphabet::binary(), 1000), budget_error);
}

TEST_CASE("subset witness", "[probe]") {
  Dfa c = cycle_dfa(Alphabet::binary(), bits("01"));
  auto r = subset_witness(c, oracle("equal"), 14, 1'000'000);
  CHECK(r.verdict == SubsetVerdict::Subset);
  CHECK(r.checked == 8);

  auto s = subset_witness(universal_dfa(Alphabet::binary()), oracle("leq"), 4, 1'000'000);
  CHECK(s.verdict == SubsetVerdict::Counterexample);
  CHECK(s.counterexample.size() <= 1);

  CHECK(subset_witness(empty_dfa(Alphabet::binary()), oracle("leq"), 8, 10).verdict ==
        SubsetVerdict::Subset);

  auto capped = subset_witness(universal_dfa(Alphabet::binary()),
                               universal_language(Alphabet::binary()), 10, 100);
  CHECK(capped.verdict == SubsetVerdict::Inconclusive);
}

TEST_CASE("subset witness visits words shortest first", "[probe]") {
  // Σ* against Equal*: λ, 0, 1 are members; 00 is the first miss
  auto r = subset_witness(universal_dfa(Alphabet::binary()), oracle("equal-star"), 6, 1000);
  REQUIRE(r.verdict == SubsetVerdict::Counterexample);
  CHECK(r.counterexample == bits("00"));
}

TEST_CASE("immunity probe", "[probe]") {
  SECTION("everything survives against Σ*") {
    auto p = immunity_probe(universal_language(Alphabet::binary()), 1, 8, 1'000'000);
    CHECK(p.survivors.size() == 1);  // the single accepting one-state machine
    CHECK(p.checked == 2);
  }
  SECTION("Equal has the (01)* survivor at three states") {
    auto p = immunity_probe(oracle("equal"), 3, 14, 1'000'000);
    Dfa c = cycle_dfa(Alphabet::binary(), bits("01"));
    bool found = false;
    for (const auto& d : p.survivors) {
      CHECK(is_infinite(d));
      found = found || same_language(d, c, 12);
    }
    CHECK(found);
  }
  SECTION("longer horizons only remove survivors") {
    auto shortp = immunity_probe(oracle("equal-star"), 3, 6, 1'000'000);
    auto longp = immunity_probe(oracle("equal-star"), 3, 12, 1'000'000);
    std::set<std::pair<std::vector<State>, std::vector<bool>>> s;
    for (const auto& d : shortp.survivors) s.emplace(d.table(), d.finals());
    for (const auto& d : longp.survivors) CHECK(s.count({d.table(), d.finals()}) == 1);
    CHECK(longp.survivors.size() <= shortp.survivors.size());
  }
  SECTION("worker count does not change the survivors") {
    auto a = immunity_probe(oracle("equal"), 3, 10, 1'000'000, 1);
    auto b = immunity_probe(oracle("equal"), 3, 10, 1'000'000, 4);
    REQUIRE(a.survivors.size() == b.survivors.size());
    for (std::size_t i = 0; i < a.survivors.size(); ++i) CHECK(a.survivors[i] == b.survivors[i]);
  }
}

TEST_CASE("pump decomposition", "[probe]") {
  Dfa c = cycle_dfa(Alphabet::binary(), bits("01"));
  auto p = pump_decompose(c, bits("0101"));
  CHECK(p.x.size() + p.y.size() <= c.size());
  CHECK(p.y == bits("01"));
  for (std::size_t i = 0; i <= 5; ++i) CHECK(accepts(c, pump(p, i)));

  auto u = pump_decompose(universal_dfa(Alphabet::binary()), bits("1"));
  CHECK(u.x.empty());
  CHECK(u.y == bits("1"));
  CHECK(u.z.empty());

  CHECK_THROWS_AS(pump_decompose(c, bits("01")), input_error);
  CHECK_THROWS_AS(pump_decompose(c, bits("0110")), input_error);
}

TEST_CASE("pump decomposition guarantees on every small machine", "[probe]") {
  for_each_dfa(3, Alphabet::binary(), [&](const Dfa& d) {
    for (std::size_t n = d.size(); n <= d.size() + 3; ++n)
      for (const auto& w : ref::all_words(2, n)) {
        if (!accepts(d, w)) continue;
        auto p = pump_decompose(d, w);
        CHECK(p.x.size() + p.y.size() <= d.size());
        CHECK(p.y.size() >= 1);
        CHECK(pump(p, 1) == w);
        for (std::size_t i = 0; i <= 5; ++i) CHECK(accepts(d, pump(p, i)));
      }
  });
}

TEST_CASE("pump refutation", "[probe]") {
  Dfa m = one_marker();
  auto ps = oracle("pal-sharp");
  auto r = pump_refute(m, ps, m.alphabet().parse("0#0"), 5);
  REQUIRE(r.has_value());
  CHECK(r->i == 2);
  CHECK_FALSE(ps.member(r->word));

  CHECK_FALSE(pump_refute(m, ps, m.alphabet().parse("0#0"), 1).has_value());

  Dfa c = cycle_dfa(Alphabet::binary(), bits("01"));
  CHECK_FALSE(pump_refute(c, oracle("equal"), bits("0101"), 8, true).has_value());

  // pumping down: Σ* with w = 00 against {00} refutes only at i = 0
  Dfa u = universal_dfa(Alphabet::binary());
  LanguageOracle only00{"only-00", Alphabet::binary(), [](const Word& w) { return w == Word{0, 0}; }};
  CHECK_FALSE(pump_refute(u, only00, bits("00"), 1).has_value());
  auto down = pump_refute(u, only00, bits("00"), 1, true);
  REQUIRE(down.has_value());
  CHECK(down->i == 0);
}
