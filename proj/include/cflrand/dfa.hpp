#ifndef CFLRAND_DFA_HPP
#define CFLRAND_DFA_HPP

#include "cflrand/errors.hpp"
#include "cflrand/numeric.hpp"
#include "cflrand/word.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <utility>
#include <vector>

namespace cflrand {

using State = std::uint32_t;

/// Complete deterministic finite automaton. The transition table is dense and
/// row-major: `table[state * |Σ| + symbol]`.
class Dfa {
 public:
  Dfa(Alphabet alphabet, std::size_t states, State start, std::vector<State> table,
      std::vector<bool> finals)
      : alphabet_(std::move(alphabet)),
        states_(states),
        start_(start),
        table_(std::move(table)),
        finals_(std::move(finals)) {
    if (states_ == 0) throw input_error("dfa needs at least one state");
    if (start_ >= states_) throw input_error("dfa start state out of range");
    if (table_.size() != states_ * alphabet_.size())
      throw input_error("dfa transition table must have states * |alphabet| entries");
    for (State t : table_)
      if (t >= states_) throw input_error("dfa transition target out of range");
    if (finals_.size() != states_) throw input_error("dfa final flags must cover every state");
  }

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t sigma() const noexcept { return alphabet_.size(); }
  std::size_t size() const noexcept { return states_; }
  State start() const noexcept { return start_; }
  const std::vector<State>& table() const noexcept { return table_; }
  const std::vector<bool>& finals() const noexcept { return finals_; }

  State step(State q, Symbol s) const noexcept { return table_[q * alphabet_.size() + s]; }
  bool is_final(State q) const noexcept { return finals_[q]; }

  /// State reached from `q` after reading `w`; symbols are not validated.
  State run_from(State q, const Word& w) const noexcept {
    for (Symbol s : w) q = step(q, s);
    return q;
  }

  friend bool operator==(const Dfa& a, const Dfa& b) {
    return a.alphabet_ == b.alphabet_ && a.states_ == b.states_ && a.start_ == b.start_ &&
           a.table_ == b.table_ && a.finals_ == b.finals_;
  }

 private:
  Alphabet alphabet_;
  std::size_t states_;
  State start_;
  std::vector<State> table_;
  std::vector<bool> finals_;
};

inline bool accepts(const Dfa& d, const Word& w) {
  State q = d.start();
  for (Symbol s : w) {
    if (s >= d.sigma()) throw input_error("word contains a symbol outside the dfa alphabet");
    q = d.step(q, s);
  }
  return d.is_final(q);
}

/// |L(d) ∩ Σ^n|, by dynamic programming over per-state path counts.
inline BigInt count_accepted(const Dfa& d, std::size_t n) {
  std::vector<BigInt> ways(d.size(), 0), next(d.size());
  ways[d.start()] = 1;
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(next.begin(), next.end(), BigInt(0));
    for (State q = 0; q < d.size(); ++q) {
      if (ways[q] == 0) continue;
      for (Symbol s = 0; s < d.sigma(); ++s) next[d.step(q, s)] += ways[q];
    }
    ways.swap(next);
  }
  BigInt total = 0;
  for (State q = 0; q < d.size(); ++q)
    if (d.is_final(q)) total += ways[q];
  return total;
}

namespace detail {

inline std::vector<bool> reachable_states(const Dfa& d) {
  std::vector<bool> seen(d.size(), false);
  std::vector<State> stack{d.start()};
  seen[d.start()] = true;
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (Symbol s = 0; s < d.sigma(); ++s) {
      State t = d.step(q, s);
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

inline std::vector<bool> coreachable_states(const Dfa& d) {
  std::vector<std::vector<State>> rev(d.size());
  for (State q = 0; q < d.size(); ++q)
    for (Symbol s = 0; s < d.sigma(); ++s) rev[d.step(q, s)].push_back(q);
  std::vector<bool> seen(d.size(), false);
  std::vector<State> stack;
  for (State q = 0; q < d.size(); ++q)
    if (d.is_final(q)) {
      seen[q] = true;
      stack.push_back(q);
    }
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (State p : rev[q])
      if (!seen[p]) {
        seen[p] = true;
        stack.push_back(p);
      }
  }
  return seen;
}

}  // namespace detail

/// True iff some cycle runs through states that are both reachable and
/// co-reachable, i.e. L(d) is infinite.
inline bool is_infinite(const Dfa& d) {
  auto reach = detail::reachable_states(d);
  auto coreach = detail::coreachable_states(d);
  std::vector<bool> useful(d.size());
  for (State q = 0; q < d.size(); ++q) useful[q] = reach[q] && coreach[q];

  // Kahn's algorithm on the useful subgraph: a leftover node means a cycle.
  std::vector<std::size_t> indeg(d.size(), 0);
  std::size_t total = 0;
  for (State q = 0; q < d.size(); ++q) {
    if (!useful[q]) continue;
    ++total;
    for (Symbol s = 0; s < d.sigma(); ++s)
      if (useful[d.step(q, s)]) ++indeg[d.step(q, s)];
  }
  std::vector<State> ready;
  for (State q = 0; q < d.size(); ++q)
    if (useful[q] && indeg[q] == 0) ready.push_back(q);
  std::size_t removed = 0;
  while (!ready.empty()) {
    State q = ready.back();
    ready.pop_back();
    ++removed;
    for (Symbol s = 0; s < d.sigma(); ++s) {
      State t = d.step(q, s);
      if (useful[t] && --indeg[t] == 0) ready.push_back(t);
    }
  }
  return removed < total;
}

/// Renumber reachable states in breadth-first first-reach order from the
/// start state (symbols in alphabet order) and drop unreachable ones.
inline Dfa canonicalize(const Dfa& d) {
  constexpr State unset = ~State{0};
  std::vector<State> id(d.size(), unset);
  std::vector<State> order;
  std::queue<State> queue;
  id[d.start()] = 0;
  order.push_back(d.start());
  queue.push(d.start());
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop();
    for (Symbol s = 0; s < d.sigma(); ++s) {
      State t = d.step(q, s);
      if (id[t] == unset) {
        id[t] = static_cast<State>(order.size());
        order.push_back(t);
        queue.push(t);
      }
    }
  }
  std::vector<State> table(order.size() * d.sigma());
  std::vector<bool> finals(order.size());
  for (State i = 0; i < order.size(); ++i) {
    finals[i] = d.is_final(order[i]);
    for (Symbol s = 0; s < d.sigma(); ++s) table[i * d.sigma() + s] = id[d.step(order[i], s)];
  }
  return Dfa(d.alphabet(), order.size(), 0, std::move(table), std::move(finals));
}

/// Minimal equivalent DFA via Moore partition refinement, canonically
/// numbered.
inline Dfa minimize(const Dfa& input) {
  Dfa d = canonicalize(input);
  const std::size_t n = d.size(), sigma = d.sigma();
  std::vector<std::size_t> cls(n);
  for (State q = 0; q < n; ++q) cls[q] = d.is_final(q) ? 1 : 0;
  std::size_t classes = 0;
  for (;;) {
    std::map<std::vector<std::size_t>, std::size_t> ids;
    std::vector<std::size_t> next(n);
    for (State q = 0; q < n; ++q) {
      std::vector<std::size_t> sig{cls[q]};
      for (Symbol s = 0; s < sigma; ++s) sig.push_back(cls[d.step(q, s)]);
      auto [it, inserted] = ids.emplace(std::move(sig), ids.size());
      next[q] = it->second;
    }
    bool stable = ids.size() == classes;
    classes = ids.size();
    cls.swap(next);
    if (stable) break;
  }
  std::vector<State> table(classes * sigma);
  std::vector<bool> finals(classes);
  for (State q = 0; q < n; ++q) {
    finals[cls[q]] = d.is_final(q);
    for (Symbol s = 0; s < sigma; ++s)
      table[cls[q] * sigma + s] = static_cast<State>(cls[d.step(q, s)]);
  }
  return canonicalize(Dfa(d.alphabet(), classes, static_cast<State>(cls[d.start()]),
                          std::move(table), std::move(finals)));
}

/// Reachable part of the synchronous product; a word is accepted iff
/// `op(a accepts, b accepts)`.
inline Dfa product(const Dfa& a, const Dfa& b, const std::function<bool(bool, bool)>& op) {
  if (!(a.alphabet() == b.alphabet())) throw input_error("dfa product: alphabet mismatch");
  const std::size_t sigma = a.sigma();
  std::map<std::pair<State, State>, State> id;
  std::vector<std::pair<State, State>> order;
  auto intern = [&](std::pair<State, State> p) {
    auto [it, inserted] = id.emplace(p, static_cast<State>(order.size()));
    if (inserted) order.push_back(p);
    return it->second;
  };
  intern({a.start(), b.start()});
  std::vector<State> table;
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto [p, q] = order[i];
    for (Symbol s = 0; s < sigma; ++s) table.push_back(intern({a.step(p, s), b.step(q, s)}));
  }
  std::vector<bool> finals(order.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    finals[i] = op(a.is_final(order[i].first), b.is_final(order[i].second));
  return Dfa(a.alphabet(), order.size(), 0, std::move(table), std::move(finals));
}

inline Dfa complement(const Dfa& d) {
  std::vector<bool> finals(d.size());
  for (State q = 0; q < d.size(); ++q) finals[q] = !d.is_final(q);
  return Dfa(d.alphabet(), d.size(), d.start(), d.table(), std::move(finals));
}

inline Dfa universal_dfa(const Alphabet& alphabet) {
  return Dfa(alphabet, 1, 0, std::vector<State>(alphabet.size(), 0), {true});
}

inline Dfa empty_dfa(const Alphabet& alphabet) {
  return Dfa(alphabet, 1, 0, std::vector<State>(alphabet.size(), 0), {false});
}

/// DFA for (w)^* for a nonempty word w: a cycle of |w| states plus a sink.
inline Dfa cycle_dfa(const Alphabet& alphabet, const Word& w) {
  if (w.empty()) throw input_error("cycle word must be nonempty");
  alphabet.check(w);
  const std::size_t k = w.size(), sigma = alphabet.size();
  const State sink = static_cast<State>(k);
  std::vector<State> table((k + 1) * sigma, sink);
  for (std::size_t i = 0; i < k; ++i)
    table[i * sigma + w[i]] = static_cast<State>((i + 1) % k);
  std::vector<bool> finals(k + 1, false);
  finals[0] = true;
  return Dfa(alphabet, k + 1, 0, std::move(table), std::move(finals));
}

}  // namespace cflrand

#endif  // CFLRAND_DFA_HPP
