#ifndef CFLRAND_ERRORS_HPP
#define CFLRAND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cflrand {

/// Malformed user input: a symbol outside the alphabet, an unknown language
/// id, a bad automaton document.
struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An enumeration or search would exceed its configured budget.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A structural invariant of an object does not hold (e.g. advice length).
struct invariant_error : std::logic_error {
  using std::logic_error::logic_error;
};

/// A ratio whose denominator is zero at the requested length.
struct undefined_ratio_error : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace cflrand

#endif  // CFLRAND_ERRORS_HPP
