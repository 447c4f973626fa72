#ifndef CFLRAND_ADVISED_HPP
#define CFLRAND_ADVISED_HPP

#include "cflrand/dfa.hpp"
#include "cflrand/errors.hpp"
#include "cflrand/word.hpp"

#include <functional>
#include <map>
#include <string>

namespace cflrand {

/// Length-indexed advice: n -> a word of length n over the advice alphabet.
using AdviceFn = std::function<Word(std::size_t)>;

/// Alphabet of track symbols [σ over τ], named "σ/τ", ordered so that the
/// code of the pair is σ * |Γ| + τ.
inline Alphabet track_alphabet(const Alphabet& input, const Alphabet& advice) {
  std::vector<std::string> names;
  for (const auto& a : input.names())
    for (const auto& b : advice.names()) names.push_back(a + "/" + b);
  return Alphabet(std::move(names));
}

/// A DFA over track symbols plus an advice function: the model of a language
/// with length-n advice. Membership of w is acceptance of [w over h(|w|)].
class AdvisedDfa {
 public:
  AdvisedDfa(Alphabet input, Alphabet advice, Dfa base, AdviceFn fn)
      : input_(std::move(input)),
        advice_alphabet_(std::move(advice)),
        base_(std::move(base)),
        advice_(std::move(fn)) {
    if (!(base_.alphabet() == track_alphabet(input_, advice_alphabet_)))
      throw input_error("advised dfa: base alphabet must be the track alphabet");
  }

  const Alphabet& input_alphabet() const noexcept { return input_; }
  const Alphabet& advice_alphabet() const noexcept { return advice_alphabet_; }
  const Dfa& base() const noexcept { return base_; }

  /// Advice for length n, checked to be a word of length n.
  Word advice(std::size_t n) const {
    Word h = advice_(n);
    if (h.size() != n)
      throw invariant_error("advice for length " + std::to_string(n) + " has length " +
                            std::to_string(h.size()));
    if (!advice_alphabet_.contains(h)) throw invariant_error("advice outside advice alphabet");
    return h;
  }

  Symbol track_symbol(Symbol in, Symbol adv) const noexcept {
    return static_cast<Symbol>(in * advice_alphabet_.size() + adv);
  }

  /// [w over h] for an explicit advice word.
  Word track(const Word& w, const Word& h) const {
    if (w.size() != h.size()) throw invariant_error("track halves must have equal length");
    Word t(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) t[i] = track_symbol(w[i], h[i]);
    return t;
  }

  /// Base state after the first `prefix` track symbols of [w over h(|w|)].
  State state_after(const Word& w, std::size_t prefix) const {
    input_.check(w);
    Word h = advice(w.size());
    State q = base_.start();
    for (std::size_t i = 0; i < prefix && i < w.size(); ++i)
      q = base_.step(q, track_symbol(w[i], h[i]));
    return q;
  }

 private:
  Alphabet input_;
  Alphabet advice_alphabet_;
  Dfa base_;
  AdviceFn advice_;
};

inline bool accepts(const AdvisedDfa& a, const Word& w) {
  return a.base().is_final(a.state_after(w, w.size()));
}

/// Advice loaded as an explicit table; lengths missing from the table are an
/// invariant violation when queried.
inline AdviceFn advice_table(std::map<std::size_t, Word> table) {
  return [table = std::move(table)](std::size_t n) -> Word {
    auto it = table.find(n);
    if (it == table.end())
      throw invariant_error("no advice recorded for length " + std::to_string(n));
    return it->second;
  };
}

}  // namespace cflrand

#endif  // CFLRAND_ADVISED_HPP
