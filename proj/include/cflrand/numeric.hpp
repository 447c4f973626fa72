#ifndef CFLRAND_NUMERIC_HPP
#define CFLRAND_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <cstdio>
#include <string>

namespace cflrand {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt pow_int(std::uint64_t base, std::size_t exp) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

inline Rational make_ratio(const BigInt& num, const BigInt& den) {
  return Rational(num, den);
}

inline Rational abs_ratio(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

/// "num/den" with den always printed, even when 1.
inline std::string exact_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

/// Decimal rendering with 12 significant digits. Presentation only.
inline std::string decimal_string(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", r.convert_to<double>());
  return buf;
}

}  // namespace cflrand

#endif  // CFLRAND_NUMERIC_HPP
