#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace cflrand;
using ref::bits;

namespace {

Dfa parity_dfa() {
  // accepts words with an even number of 1s
  return Dfa(Alphabet::binary(), 2, 0, {0, 1, 1, 0}, {true, false});
}

Dfa lambda_or_zero() {
  // {λ, 0}: 0 start, 1 after "0", 2 sink
  return Dfa(Alphabet::binary(), 3, 0, {1, 2, 2, 2, 2, 2}, {true, true, false});
}

std::vector<Dfa> sample_dfas() {
  std::vector<Dfa> out{parity_dfa(), lambda_or_zero(), cycle_dfa(Alphabet::binary(), bits("01")),
                       cycle_dfa(Alphabet::binary(), bits("011")), universal_dfa(Alphabet::binary()),
                       empty_dfa(Alphabet::binary())};
  // a few arbitrary 3- and 4-state tables
  out.emplace_back(Alphabet::binary(), 3, 1, std::vector<State>{2, 0, 1, 1, 0, 2},
                   std::vector<bool>{false, true, true});
  out.emplace_back(Alphabet::binary(), 4, 0, std::vector<State>{1, 2, 3, 0, 3, 3, 2, 1},
                   std::vector<bool>{true, false, false, true});
  out.emplace_back(Alphabet("abc"), 2, 0, std::vector<State>{1, 0, 0, 1, 1, 0},
                   std::vector<bool>{false, true});
  return out;
}

}  // namespace

TEST_CASE("dfa run on the (01)* cycle", "[dfa]") {
  Dfa d = cycle_dfa(Alphabet::binary(), bits("01"));
  CHECK(accepts(d, bits("0101")));
  CHECK_FALSE(accepts(d, bits("011")));
  CHECK(accepts(d, Word{}));
  CHECK_THROWS_AS(accepts(d, Word{0, 5}), input_error);
}

TEST_CASE("dfa count small examples", "[dfa]") {
  CHECK(count_accepted(universal_dfa(Alphabet::binary()), 10) == 1024);
  CHECK(count_accepted(cycle_dfa(Alphabet::binary(), bits("01")), 6) == 1);
  CHECK(count_accepted(cycle_dfa(Alphabet::binary(), bits("01")), 7) == 0);
}

TEST_CASE("dfa count agrees with enumeration", "[dfa]") {
  for (const auto& d : sample_dfas())
    for (std::size_t n = 0; n <= 12; ++n) {
      auto ws = ref::all_words(d.sigma(), n);
      auto expected = ref::count(ws, [&](const Word& w) { return ref::dfa_accepts(d, w); });
      CHECK(count_accepted(d, n) == expected);
    }
}

TEST_CASE("dfa count is exact beyond 64 bits", "[dfa]") {
  CHECK(count_accepted(universal_dfa(Alphabet::binary()), 100) == pow_int(2, 100));
}

TEST_CASE("dfa infiniteness", "[dfa]") {
  CHECK(is_infinite(cycle_dfa(Alphabet::binary(), bits("01"))));
  CHECK_FALSE(is_infinite(lambda_or_zero()));
  // cycle on an unreachable state 2, the only final state
  Dfa unreachable(Alphabet::binary(), 3, 0, {1, 1, 1, 1, 2, 2}, {false, false, true});
  CHECK_FALSE(is_infinite(unreachable));
  // reachable cycle that cannot reach a final state
  Dfa dead_loop(Alphabet::binary(), 3, 0, {1, 2, 1, 1, 1, 1}, {false, false, true});
  CHECK_FALSE(is_infinite(dead_loop));
  CHECK_FALSE(is_infinite(empty_dfa(Alphabet::binary())));
  CHECK(is_infinite(universal_dfa(Alphabet::binary())));
}

TEST_CASE("dfa infiniteness matches long-word acceptance", "[dfa]") {
  // L infinite iff some accepted word has length in [|Q|, 2|Q|)
  for (const auto& d : sample_dfas()) {
    bool witness = false;
    for (std::size_t n = d.size(); n < 2 * d.size(); ++n) witness = witness || count_accepted(d, n) > 0;
    CHECK(is_infinite(d) == witness);
  }
}

TEST_CASE("dfa minimisation", "[dfa]") {
  SECTION("minimal parity automaton is kept") {
    Dfa m = minimize(parity_dfa());
    CHECK(m == parity_dfa());
  }
  SECTION("duplicated state is merged") {
    // parity with the odd state split into two copies 1 and 2
    Dfa dup(Alphabet::binary(), 3, 0, {0, 1, 2, 0, 1, 0}, {true, false, false});
    Dfa m = minimize(dup);
    CHECK(m.size() == 2);
    for (const auto& w : ref::words_up_to(2, 12)) CHECK(accepts(m, w) == accepts(dup, w));
  }
  SECTION("language preserved, size never grows, idempotent") {
    for (const auto& d : sample_dfas()) {
      Dfa m = minimize(d);
      CHECK(m.size() <= d.size());
      CHECK(minimize(m) == m);
      for (const auto& w : ref::words_up_to(d.sigma(), d.sigma() == 2 ? 12 : 7))
        CHECK(accepts(m, w) == accepts(d, w));
    }
  }
}

TEST_CASE("dfa product", "[dfa]") {
  Dfa a = cycle_dfa(Alphabet::binary(), bits("01"));
  Dfa b = cycle_dfa(Alphabet::binary(), bits("10"));
  Dfa both = product(a, complement(a), [](bool x, bool y) { return x && y; });
  for (std::size_t n = 0; n <= 10; ++n) CHECK(count_accepted(both, n) == 0);
  Dfa either = product(a, b, [](bool x, bool y) { return x || y; });
  CHECK(accepts(either, bits("0101")));
  CHECK(accepts(either, bits("1010")));
  CHECK_FALSE(accepts(either, bits("0110")));
  CHECK(either.size() <= a.size() * b.size());
  CHECK_THROWS_AS(product(a, Dfa(Alphabet("ab"), 1, 0, {0, 0}, {true}),
                          [](bool x, bool) { return x; }),
                  input_error);

  auto samples = sample_dfas();
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = 0; j < samples.size(); ++j) {
      if (!(samples[i].alphabet() == samples[j].alphabet())) continue;
      Dfa p = product(samples[i], samples[j], [](bool x, bool y) { return x && y; });
      for (std::size_t n = 0; n <= (samples[i].sigma() == 2 ? 12 : 6); ++n) {
        auto ws = ref::all_words(samples[i].sigma(), n);
        auto expected = ref::count(ws, [&](const Word& w) {
          return ref::dfa_accepts(samples[i], w) && ref::dfa_accepts(samples[j], w);
        });
        CHECK(count_accepted(p, n) == expected);
      }
    }
}

TEST_CASE("dfa construction validates its table", "[dfa]") {
  CHECK_THROWS_AS(Dfa(Alphabet::binary(), 2, 0, {0, 1, 1}, {true, false}), input_error);
  CHECK_THROWS_AS(Dfa(Alphabet::binary(), 2, 0, {0, 1, 1, 2}, {true, false}), input_error);
  CHECK_THROWS_AS(Dfa(Alphabet::binary(), 2, 2, {0, 1, 1, 0}, {true, false}), input_error);
  CHECK_THROWS_AS(Dfa(Alphabet::binary(), 2, 0, {0, 1, 1, 0}, {true}), input_error);
}

TEST_CASE("pda acceptance on the stock machines", "[pda]") {
  Pda ip = ip_star_pda();
  CHECK(accepts(ip, bits("0110")));
  Pda leq = leq_pda();
  CHECK(accepts(leq, bits("0011")));
  CHECK_FALSE(accepts(leq, bits("010")));
  CHECK(accepts(leq, Word{}));
}

TEST_CASE("pda acceptance agrees with the set definitions", "[pda]") {
  Pda ip = ip_star_pda();
  Pda leq = leq_pda();
  for (const auto& w : ref::words_up_to(2, 10)) {
    CHECK(accepts(ip, w) == ref::ip_star(w));
    CHECK(accepts(leq, w) == ref::keq(w, 2));
  }
}

TEST_CASE("pda on the empty word uses epsilon moves only", "[pda]") {
  // 0 -ε-> 1 (final) only
  Pda p(Alphabet::binary(), Alphabet("Z"), 2, 0, 0, {false, true},
        {{0, std::nullopt, 0, 1, {0}, {}}});
  CHECK(accepts(p, Word{}));
  CHECK_FALSE(accepts(p, bits("0")));
  // ε-loop without progress must terminate
  Pda loop(Alphabet::binary(), Alphabet("Z"), 1, 0, 0, {false}, {{0, std::nullopt, 0, 0, {0}, {}}});
  CHECK_FALSE(accepts(loop, Word{}));
}

TEST_CASE("pda long pushes are split into short ones", "[pda]") {
  // push three symbols at once, then pop them one by one
  Pda p(Alphabet::binary(), Alphabet("ZA"), 3, 0, 0, {false, false, true},
        {{0, Symbol{0}, 0, 1, {1, 1, 0}, {}},
         {1, Symbol{1}, 1, 1, {}, {}},
         {1, std::nullopt, 0, 2, {0}, {}}});
  for (const auto& t : p.transitions()) CHECK(t.push.size() <= 2);
  CHECK(p.size() > 3);
  CHECK(accepts(p, bits("011")));
  CHECK_FALSE(accepts(p, bits("01")));
  CHECK_FALSE(accepts(p, bits("0111")));
}

TEST_CASE("bounded stack verdicts", "[pda]") {
  Pda leq = leq_pda();
  // never pushes on this input: height stays 1
  Pda no_push(Alphabet::binary(), Alphabet("Z"), 2, 0, 0, {false, true},
              {{0, Symbol{1}, 0, 1, {0}, {}}});
  CHECK(bounded_verdict(no_push, bits("1"), 1) == ThreeVal::One);
  CHECK(bounded_verdict(no_push, bits("0"), 1) == ThreeVal::Zero);
  CHECK(bounded_verdict(leq, bits("0011"), 1) == ThreeVal::Undefined);
  CHECK(bounded_verdict(leq, bits("0011"), 4 + 1) == ThreeVal::One);
  CHECK(bounded_verdict(leq, bits("0011"), 3) == ThreeVal::One);
  CHECK(bounded_verdict(leq, bits("0011"), 2) == ThreeVal::Undefined);
}

TEST_CASE("bounded verdicts are consistent with acceptance and monotone", "[pda]") {
  for (const Pda& p : {leq_pda(), ip_star_pda()})
    for (const auto& w : ref::words_up_to(2, 7)) {
      const bool acc = accepts(p, w);
      ThreeVal prev = ThreeVal::Undefined;
      for (std::size_t k = 1; k <= w.size() + 3; ++k) {
        ThreeVal v = bounded_verdict(p, w, k);
        if (v == ThreeVal::One) CHECK(acc);
        if (prev == ThreeVal::One) CHECK(v == ThreeVal::One);
        if (prev == ThreeVal::Zero) CHECK(v == ThreeVal::Zero);
        prev = v;
      }
      CHECK(prev == (acc ? ThreeVal::One : ThreeVal::Zero));
    }
}

TEST_CASE("transducer outputs", "[pda]") {
  Pda id = identity_transducer(Alphabet::binary());
  CHECK(id.is_transducer());
  CHECK(transducer_outputs(id, bits("101"), 3) == std::set<Word>{bits("101")});
  CHECK(transducer_outputs(id, bits("101"), 2).empty());
  // no accepting path at all
  Pda none(Alphabet::binary(), Alphabet("Z"), 2, 0, 0, {false, false},
           {{0, Symbol{0}, 0, 1, {0}, {Symbol{1}}}});
  CHECK(transducer_outputs(none, bits("0"), 5).empty());
}

TEST_CASE("transducer search reports budget exhaustion", "[pda]") {
  // ε-loop that writes a symbol each time: outputs grow until the length cap
  Pda writer(Alphabet::binary(), Alphabet("Z"), 1, 0, 0, {true},
             {{0, std::nullopt, 0, 0, {0}, {Symbol{0}}}, {0, std::nullopt, 0, 0, {0}, {Symbol{1}}}});
  CHECK(transducer_outputs(writer, Word{}, 3).size() == 15);
  CHECK_THROWS_AS(transducer_outputs(writer, Word{}, 30, 1000), budget_error);
}

TEST_CASE("advised runs for the L_keq model", "[advised]") {
  AdvisedDfa m = advised_model("l-keq:3");
  const Alphabet& a = m.input_alphabet();
  CHECK(accepts(m, a.parse("abc")));
  CHECK_FALSE(accepts(m, a.parse("aab")));
  CHECK(accepts(m, Word{}));
  for (const auto& w : ref::all_words(3, 5)) CHECK_FALSE(accepts(m, w));
  for (const auto& w : ref::words_up_to(3, 9)) CHECK(accepts(m, w) == ref::keq(w, 3));
}

TEST_CASE("advice of the wrong length is an invariant violation", "[advised]") {
  AdvisedDfa base = advised_model("l-keq:3");
  AdvisedDfa broken(base.input_alphabet(), base.advice_alphabet(), base.base(),
                    [](std::size_t n) { return Word(n + 1, 0); });
  CHECK_THROWS_AS(accepts(broken, Word{0, 1, 2}), invariant_error);
  AdvisedDfa tabled(base.input_alphabet(), base.advice_alphabet(), base.base(),
                    advice_table({{3, Word{0, 1, 2}}}));
  CHECK(accepts(tabled, Word{0, 1, 2}));
  CHECK_THROWS_AS(accepts(tabled, Word{0, 1}), invariant_error);
}
