#ifndef CFLRAND_PDA_HPP
#define CFLRAND_PDA_HPP

#include "cflrand/dfa.hpp"
#include "cflrand/errors.hpp"
#include "cflrand/word.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

namespace cflrand {

using StackSymbol = std::uint8_t;

/// (from, read, top) -> (to, push). `read` empty means an epsilon move. The
/// top symbol is always popped and `push` written in its place, first element
/// on top. `out` is appended to the output tape when the move is taken.
struct PdaTransition {
  State from = 0;
  std::optional<Symbol> read;
  StackSymbol top = 0;
  State to = 0;
  std::vector<StackSymbol> push;
  Word out;
};

/// Three-valued verdict of a run under a stack-height cap.
enum class ThreeVal { One, Zero, Undefined };

inline const char* to_string(ThreeVal v) {
  switch (v) {
    case ThreeVal::One: return "1";
    case ThreeVal::Zero: return "0";
    case ThreeVal::Undefined: return "undefined";
  }
  return "?";
}

/// Nondeterministic pushdown automaton accepting by final state. Output words
/// on transitions turn it into a transducer; outputs use the input alphabet.
/// Push strings longer than two are split into chains of at most two symbols
/// on construction, adding fresh intermediate states.
class Pda {
 public:
  Pda(Alphabet input, Alphabet stack, std::size_t states, State start, StackSymbol initial,
      std::vector<bool> finals, std::vector<PdaTransition> transitions)
      : input_(std::move(input)),
        stack_(std::move(stack)),
        states_(states),
        start_(start),
        initial_(initial),
        finals_(std::move(finals)) {
    if (states_ == 0 || start_ >= states_) throw input_error("pda start state out of range");
    if (initial_ >= stack_.size()) throw input_error("pda initial stack symbol out of range");
    if (finals_.size() != states_) throw input_error("pda final flags must cover every state");
    for (auto& t : transitions) {
      if (t.from >= states_ || t.to >= states_) throw input_error("pda transition state out of range");
      if (t.read && *t.read >= input_.size()) throw input_error("pda transition reads unknown symbol");
      if (t.top >= stack_.size()) throw input_error("pda transition has unknown stack top");
      for (auto s : t.push)
        if (s >= stack_.size()) throw input_error("pda transition pushes unknown symbol");
      if (!input_.contains(t.out)) throw input_error("pda output outside alphabet");
      if (!t.out.empty()) transducer_ = true;
      add_normalized(std::move(t));
    }
    index();
  }

  const Alphabet& input_alphabet() const noexcept { return input_; }
  const Alphabet& stack_alphabet() const noexcept { return stack_; }
  std::size_t size() const noexcept { return states_; }
  State start() const noexcept { return start_; }
  StackSymbol initial_stack() const noexcept { return initial_; }
  const std::vector<bool>& finals() const noexcept { return finals_; }
  bool is_final(State q) const noexcept { return finals_[q]; }
  const std::vector<PdaTransition>& transitions() const noexcept { return transitions_; }
  bool is_transducer() const noexcept { return transducer_; }

  /// Largest growth of the stack produced by one move.
  std::size_t max_net_push() const noexcept {
    std::size_t best = 0;
    for (const auto& t : transitions_)
      if (t.push.size() > 1) best = std::max(best, t.push.size() - 1);
    return best;
  }

  /// Indices of transitions leaving `q` with stack top `top`.
  const std::vector<std::size_t>& moves(State q, StackSymbol top) const {
    return by_state_top_[q * stack_.size() + top];
  }

 private:
  void add_normalized(PdaTransition t) {
    if (t.push.size() <= 2) {
      transitions_.push_back(std::move(t));
      return;
    }
    // X -> Y1..Yr becomes X -> Y(r-1) Yr, then epsilon steps that replace the
    // current top Y(j) with Y(j-1) Y(j) until Y1 is on top.
    const auto& y = t.push;
    const std::size_t r = y.size();
    State prev = static_cast<State>(states_++);
    finals_.push_back(false);
    transitions_.push_back({t.from, t.read, t.top, prev, {y[r - 2], y[r - 1]}, t.out});
    for (std::size_t j = r - 2; j >= 1; --j) {
      State target;
      if (j == 1) {
        target = t.to;
      } else {
        target = static_cast<State>(states_++);
        finals_.push_back(false);
      }
      transitions_.push_back({prev, std::nullopt, y[j], target, {y[j - 1], y[j]}, {}});
      prev = target;
    }
  }

  void index() {
    by_state_top_.assign(states_ * stack_.size(), {});
    for (std::size_t i = 0; i < transitions_.size(); ++i)
      by_state_top_[transitions_[i].from * stack_.size() + transitions_[i].top].push_back(i);
  }

  Alphabet input_;
  Alphabet stack_;
  std::size_t states_;
  State start_;
  StackSymbol initial_;
  std::vector<bool> finals_;
  std::vector<PdaTransition> transitions_;
  std::vector<std::vector<std::size_t>> by_state_top_;
  bool transducer_ = false;
};

namespace detail {

struct PdaConfig {
  std::size_t pos;
  State state;
  std::vector<StackSymbol> stack;  // bottom first
  Word out;
};

inline std::string config_key(const PdaConfig& c, bool with_output) {
  std::string key;
  key.reserve(12 + c.stack.size() + c.out.size());
  auto put = [&](std::uint64_t v) {
    for (int i = 0; i < 4; ++i) key.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  };
  put(c.pos);
  put(c.state);
  put(c.stack.size());
  key.append(c.stack.begin(), c.stack.end());
  if (with_output) key.append(c.out.begin(), c.out.end());
  return key;
}

struct SearchResult {
  bool accepted = false;
  bool exceeded = false;
};

/// Exhaustive configuration search with the stack height capped at `cap`.
/// Moves that would exceed the cap are not taken; `exceeded` records that
/// one existed. Stops early on acceptance when `stop_on_accept`.
inline SearchResult search(const Pda& p, const Word& w, std::size_t cap, bool stop_on_accept) {
  SearchResult result;
  PdaConfig init{0, p.start(), {p.initial_stack()}, {}};
  if (init.stack.size() > cap) {
    result.exceeded = true;
    return result;
  }
  std::unordered_set<std::string> seen;
  std::vector<PdaConfig> work;
  seen.insert(config_key(init, false));
  work.push_back(std::move(init));
  while (!work.empty()) {
    PdaConfig c = std::move(work.back());
    work.pop_back();
    if (c.pos == w.size() && p.is_final(c.state)) {
      result.accepted = true;
      if (stop_on_accept) return result;
    }
    if (c.stack.empty()) continue;
    for (std::size_t idx : p.moves(c.state, c.stack.back())) {
      const auto& t = p.transitions()[idx];
      if (t.read && (c.pos >= w.size() || w[c.pos] != *t.read)) continue;
      if (c.stack.size() - 1 + t.push.size() > cap) {
        result.exceeded = true;
        continue;
      }
      PdaConfig n{c.pos + (t.read ? 1 : 0), t.to, c.stack, {}};
      n.stack.pop_back();
      for (auto it = t.push.rbegin(); it != t.push.rend(); ++it) n.stack.push_back(*it);
      if (seen.insert(config_key(n, false)).second) work.push_back(std::move(n));
    }
  }
  return result;
}

}  // namespace detail

/// Stack-height cap used for plain acceptance: c * (|w| + 1), where c is the
/// largest net push of a single move (at least 1). Height counts every symbol
/// including the initial one.
inline std::size_t acceptance_cap(const Pda& p, const Word& w) {
  return std::max<std::size_t>(1, p.max_net_push()) * (w.size() + 1);
}

inline bool accepts(const Pda& p, const Word& w) {
  p.input_alphabet().check(w);
  return detail::search(p, w, acceptance_cap(p, w), true).accepted;
}

/// One if an accepting path keeps the stack within `k` symbols; Zero if every
/// path stays within `k` and none accepts; Undefined otherwise.
inline ThreeVal bounded_verdict(const Pda& p, const Word& w, std::size_t k) {
  p.input_alphabet().check(w);
  auto r = detail::search(p, w, k, true);
  if (r.accepted) return ThreeVal::One;
  return r.exceeded ? ThreeVal::Undefined : ThreeVal::Zero;
}

/// All outputs of accepting paths whose output has length at most
/// `max_out_len`. Throws budget_error when more than `budget` configurations
/// would be visited.
inline std::set<Word> transducer_outputs(const Pda& p, const Word& w, std::size_t max_out_len,
                                         std::size_t budget = 1'000'000) {
  p.input_alphabet().check(w);
  const std::size_t cap = acceptance_cap(p, w);
  std::set<Word> outputs;
  std::unordered_set<std::string> seen;
  std::vector<detail::PdaConfig> work;
  detail::PdaConfig init{0, p.start(), {p.initial_stack()}, {}};
  seen.insert(detail::config_key(init, true));
  work.push_back(std::move(init));
  while (!work.empty()) {
    auto c = std::move(work.back());
    work.pop_back();
    if (c.pos == w.size() && p.is_final(c.state)) outputs.insert(c.out);
    if (c.stack.empty()) continue;
    for (std::size_t idx : p.moves(c.state, c.stack.back())) {
      const auto& t = p.transitions()[idx];
      if (t.read && (c.pos >= w.size() || w[c.pos] != *t.read)) continue;
      if (c.stack.size() - 1 + t.push.size() > cap) continue;
      if (c.out.size() + t.out.size() > max_out_len) continue;
      detail::PdaConfig n{c.pos + (t.read ? 1 : 0), t.to, c.stack, c.out};
      n.stack.pop_back();
      for (auto it = t.push.rbegin(); it != t.push.rend(); ++it) n.stack.push_back(*it);
      n.out.insert(n.out.end(), t.out.begin(), t.out.end());
      if (seen.insert(detail::config_key(n, true)).second) {
        if (seen.size() > budget)
          throw budget_error("transducer search exceeded " + std::to_string(budget) +
                             " configurations");
        work.push_back(std::move(n));
      }
    }
  }
  return outputs;
}

// ---------------------------------------------------------------------------
// Stock machines.

/// {0^n 1^n | n >= 0}: push a marker per 0, pop one per 1.
inline Pda leq_pda() {
  // states: 0 start/final, 1 reading 0s, 2 reading 1s, 3 accept
  // stack: Z bottom, A marker
  const StackSymbol Z = 0, A = 1;
  std::vector<PdaTransition> t{
      {0, Symbol{0}, Z, 1, {A, Z}, {}}, {1, Symbol{0}, A, 1, {A, A}, {}},
      {1, Symbol{1}, A, 2, {}, {}},     {2, Symbol{1}, A, 2, {}, {}},
      {2, std::nullopt, Z, 3, {Z}, {}},
  };
  return Pda(Alphabet::binary(), Alphabet("ZA"), 4, 0, Z, {true, false, false, true}, std::move(t));
}

/// IP*: optionally skip a leading bit, push u, guess the middle, then pop
/// u in reverse while reading v and accumulate the parity of u^R . v.
inline Pda ip_star_pda() {
  // 0 start, 1 pushing u, 2 popping with parity 0, 3 popping with parity 1,
  // 4 accept. Stack: Z bottom, 0/1 stored bits.
  const StackSymbol Z = 0, B0 = 1, B1 = 2;
  std::vector<PdaTransition> t;
  for (Symbol b : {Symbol{0}, Symbol{1}}) t.push_back({0, b, Z, 1, {Z}, {}});  // skip a
  t.push_back({0, std::nullopt, Z, 1, {Z}, {}});
  for (StackSymbol top : {Z, B0, B1}) {
    t.push_back({1, Symbol{0}, top, 1, {B0, top}, {}});
    t.push_back({1, Symbol{1}, top, 1, {B1, top}, {}});
    t.push_back({1, std::nullopt, top, 2, {top}, {}});
  }
  for (State parity : {State{2}, State{3}})
    for (StackSymbol top : {B0, B1})
      for (Symbol v : {Symbol{0}, Symbol{1}}) {
        bool flip = (top == B1) && (v == 1);
        State next = flip ? (parity == 2 ? State{3} : State{2}) : parity;
        t.push_back({parity, v, top, next, {}, {}});
      }
  t.push_back({3, std::nullopt, Z, 4, {Z}, {}});
  return Pda(Alphabet::binary(), Alphabet("Zab"), 5, 0, Z, {false, false, false, false, true},
             std::move(t));
}

/// Copies its input to the output tape.
inline Pda identity_transducer(const Alphabet& alphabet) {
  std::vector<PdaTransition> t;
  for (Symbol s = 0; s < alphabet.size(); ++s) t.push_back({0, s, 0, 0, {0}, {s}});
  return Pda(alphabet, Alphabet("Z"), 1, 0, 0, {true}, std::move(t));
}

}  // namespace cflrand

#endif  // CFLRAND_PDA_HPP
