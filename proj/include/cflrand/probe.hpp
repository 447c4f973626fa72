#ifndef CFLRAND_PROBE_HPP
#define CFLRAND_PROBE_HPP

#include "cflrand/dfa.hpp"
#include "cflrand/errors.hpp"
#include "cflrand/languages.hpp"
#include "cflrand/parallel.hpp"
#include "cflrand/word.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace cflrand {

/// Calls `fn` on every DFA with 1..max_states states over `alphabet` whose
/// states are all reachable and numbered in breadth-first first-reach order,
/// with every choice of final states. Machines come out in a fixed order:
/// by state count, then table (odometer order), then final mask.
inline void for_each_dfa(std::size_t max_states, const Alphabet& alphabet,
                         const std::function<void(const Dfa&)>& fn,
                         std::uint64_t budget = default_budget()) {
  const std::size_t sigma = alphabet.size();
  std::uint64_t needed = 0;
  for (std::size_t s = 1; s <= max_states; ++s) {
    std::uint64_t tables = power_saturating(s, s * sigma);
    std::uint64_t masks = power_saturating(2, s);
    needed += tables > budget / masks ? budget + 1 : tables * masks;
    require_budget(needed, budget, "dfa enumeration");
  }
  for (std::size_t s = 1; s <= max_states; ++s) {
    std::vector<State> table(s * sigma, 0);
    Word odometer(s * sigma, 0);
    do {
      for (std::size_t i = 0; i < table.size(); ++i) table[i] = odometer[i];
      Dfa shape(alphabet, s, 0, table, std::vector<bool>(s, false));
      if (!(canonicalize(shape) == shape)) continue;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << s); ++mask) {
        std::vector<bool> finals(s);
        for (std::size_t q = 0; q < s; ++q) finals[q] = (mask >> q) & 1;
        fn(Dfa(alphabet, s, 0, table, std::move(finals)));
      }
    } while (next_word(odometer, s));
  }
}

inline std::vector<Dfa> enum_dfas(std::size_t max_states, const Alphabet& alphabet,
                                  std::uint64_t budget = default_budget()) {
  std::vector<Dfa> out;
  for_each_dfa(max_states, alphabet, [&](const Dfa& d) { out.push_back(d); }, budget);
  return out;
}

enum class SubsetVerdict { Subset, Counterexample, Inconclusive };

inline const char* to_string(SubsetVerdict v) {
  switch (v) {
    case SubsetVerdict::Subset: return "subset";
    case SubsetVerdict::Counterexample: return "counterexample";
    case SubsetVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct SubsetResult {
  SubsetVerdict verdict = SubsetVerdict::Subset;
  Word counterexample;
  std::uint64_t checked = 0;  // words of L(d) tested against L
};

/// Walks L(d) ∩ Σ^{<=N} by length, then lexicographically, testing each word
/// against L. Stops at the first word outside L, or after `cap` words.
inline SubsetResult subset_witness(const Dfa& d, const LanguageOracle& l, std::size_t horizon,
                                   std::uint64_t cap) {
  if (!(d.alphabet() == l.alphabet)) throw input_error("dfa and language alphabets differ");
  const std::size_t sigma = d.sigma();
  // live[r][q]: a final state is reachable from q in exactly r steps
  std::vector<std::vector<bool>> live(horizon + 1, std::vector<bool>(d.size()));
  for (State q = 0; q < d.size(); ++q) live[0][q] = d.is_final(q);
  for (std::size_t r = 1; r <= horizon; ++r)
    for (State q = 0; q < d.size(); ++q)
      for (Symbol s = 0; s < sigma && !live[r][q]; ++s)
        if (live[r - 1][d.step(q, s)]) live[r][q] = true;

  SubsetResult res;
  for (std::size_t len = 0; len <= horizon; ++len) {
    if (!live[len][d.start()]) continue;
    Word w;
    std::vector<State> states{d.start()};
    std::vector<Symbol> next{0};  // next symbol to try at each depth
    while (!states.empty()) {
      const std::size_t depth = states.size() - 1;
      if (depth == len) {
        if (res.checked == cap) {
          res.verdict = SubsetVerdict::Inconclusive;
          return res;
        }
        ++res.checked;
        if (!l.member(w)) {
          res.verdict = SubsetVerdict::Counterexample;
          res.counterexample = w;
          return res;
        }
        states.pop_back();
        next.pop_back();
        if (!w.empty()) w.pop_back();
        continue;
      }
      if (next.back() == sigma) {
        states.pop_back();
        next.pop_back();
        if (!w.empty()) w.pop_back();
        continue;
      }
      Symbol s = next.back()++;
      State t = d.step(states.back(), s);
      if (!live[len - depth - 1][t]) continue;
      w.push_back(s);
      states.push_back(t);
      next.push_back(0);
    }
  }
  return res;
}

struct ProbeResult {
  std::vector<Dfa> survivors;
  std::uint64_t checked = 0;       // canonical machines examined
  std::uint64_t infinite = 0;      // of which infinite-language
  std::uint64_t inconclusive = 0;  // subset check hit the cap
  std::size_t horizon = 0;
};

/// Canonical DFAs with at most `max_states` states whose language is infinite
/// and contained in L up to length `horizon`. A survivor is evidence against
/// immunity at this horizon only; an empty list proves nothing.
inline ProbeResult immunity_probe(const LanguageOracle& l, std::size_t max_states,
                                  std::size_t horizon, std::uint64_t cap,
                                  unsigned workers = default_workers()) {
  std::vector<Dfa> machines = enum_dfas(max_states, l.alphabet);
  std::vector<std::uint8_t> verdict(machines.size(), 0);  // 0 skip, 1 survive, 2 inconclusive
  std::vector<std::uint8_t> inf(machines.size(), 0);
  for_each_chunk(machines.size(), workers, [&](std::uint64_t, std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t i = b; i < e; ++i) {
      if (!is_infinite(machines[i])) continue;
      inf[i] = 1;
      auto r = subset_witness(machines[i], l, horizon, cap);
      if (r.verdict == SubsetVerdict::Subset) verdict[i] = 1;
      if (r.verdict == SubsetVerdict::Inconclusive) verdict[i] = 2;
    }
  });
  ProbeResult res;
  res.checked = machines.size();
  res.horizon = horizon;
  for (std::size_t i = 0; i < machines.size(); ++i) {
    res.infinite += inf[i];
    if (verdict[i] == 1) res.survivors.push_back(machines[i]);
    if (verdict[i] == 2) ++res.inconclusive;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Pumping.

struct PumpDecomposition {
  Word x, y, z;
};

inline Word pump(const PumpDecomposition& p, std::size_t i) {
  Word w = p.x;
  for (std::size_t j = 0; j < i; ++j) w.insert(w.end(), p.y.begin(), p.y.end());
  w.insert(w.end(), p.z.begin(), p.z.end());
  return w;
}

/// w = xyz where y is the loop between the first repeated state among the
/// first |Q|+1 states of the run. Then |xy| <= |Q|, |y| >= 1, and every
/// xy^iz is accepted.
inline PumpDecomposition pump_decompose(const Dfa& d, const Word& w) {
  if (w.size() < d.size()) throw input_error("word shorter than the state count");
  if (!accepts(d, w)) throw input_error("word is not accepted by the dfa");
  std::vector<std::size_t> first_seen(d.size(), w.size() + 1);
  State q = d.start();
  for (std::size_t j = 0; j <= d.size(); ++j) {
    if (first_seen[q] <= w.size()) {
      const std::size_t i = first_seen[q];
      return {slice(w, 0, i), slice(w, i, j - i), slice(w, j, w.size() - j)};
    }
    first_seen[q] = j;
    if (j < w.size()) q = d.step(q, w[j]);
  }
  throw invariant_error("pigeonhole failed in pump_decompose");
}

struct PumpRefutation {
  std::size_t i;
  Word word;
};

/// First i in 1..i_max (then i = 0 when `pump_down`) with xy^iz outside L.
inline std::optional<PumpRefutation> pump_refute(const Dfa& d, const LanguageOracle& l,
                                                 const Word& w, std::size_t i_max,
                                                 bool pump_down = false) {
  auto p = pump_decompose(d, w);
  for (std::size_t i = 1; i <= i_max; ++i) {
    Word v = pump(p, i);
    if (!l.member(v)) return PumpRefutation{i, v};
  }
  if (pump_down) {
    Word v = pump(p, 0);
    if (!l.member(v)) return PumpRefutation{0, v};
  }
  return std::nullopt;
}

}  // namespace cflrand

#endif  // CFLRAND_PROBE_HPP
