#ifndef CFLRAND_CENSUS_HPP
#define CFLRAND_CENSUS_HPP

#include "cflrand/dfa.hpp"
#include "cflrand/errors.hpp"
#include "cflrand/languages.hpp"
#include "cflrand/numeric.hpp"
#include "cflrand/parallel.hpp"
#include "cflrand/word.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

namespace cflrand {

/// Options shared by every enumeration-based measurement.
struct CensusOptions {
  unsigned workers = default_workers();
  std::uint64_t budget = default_budget();
};

/// |Σ|^n, throwing budget_error once it passes the budget.
inline std::uint64_t slice_size(std::size_t sigma, std::size_t n, std::uint64_t budget) {
  std::uint64_t total = power_saturating(sigma, n);
  require_budget(total, budget, "enumeration of a length slice");
  return total;
}

/// Membership bits of every word of Σ^n, indexed in lexicographic order.
inline std::vector<std::uint8_t> membership_slice(const LanguageOracle& l, std::size_t n,
                                                  const CensusOptions& opt = {}) {
  const std::size_t sigma = l.alphabet.size();
  const std::uint64_t total = slice_size(sigma, n, opt.budget);
  std::vector<std::uint8_t> bits(total);
  for_each_chunk(total, opt.workers, [&](std::uint64_t, std::uint64_t b, std::uint64_t e) {
    Word w = word_at(b, sigma, n);
    for (std::uint64_t i = b; i < e; ++i) {
      bits[i] = l.member(w) ? 1 : 0;
      next_word(w, sigma);
    }
  });
  return bits;
}

/// dense(L)(n) by full enumeration.
inline BigInt density(const LanguageOracle& l, std::size_t n, const CensusOptions& opt = {}) {
  const std::size_t sigma = l.alphabet.size();
  const std::uint64_t total = slice_size(sigma, n, opt.budget);
  return parallel_sum(total, opt.workers, [&](std::uint64_t b, std::uint64_t e) {
    Word w = word_at(b, sigma, n);
    std::uint64_t c = 0;
    for (std::uint64_t i = b; i < e; ++i) {
      c += l.member(w);
      next_word(w, sigma);
    }
    return c;
  });
}

/// Known exact densities. Returns nothing for languages without a formula.
inline std::optional<BigInt> closed_form_density(std::string_view raw_id, std::size_t n) {
  const std::string id = detail::normalize_id(raw_id);
  if (id == "equal") return n % 2 == 0 ? binomial(n, n / 2) : BigInt(0);
  if (id == "equal-star")
    return n % 2 == 0 ? binomial(n, n / 2) : BigInt(2) * binomial(n - 1, (n - 1) / 2);
  if (id == "pal-sharp") return n % 2 == 1 ? pow_int(2, n / 2) : BigInt(0);
  if (id == "leq") return BigInt(n % 2 == 0 ? 1 : 0);
  if (id == "sigma-star") return pow_int(2, n);
  if (id == "empty") return BigInt(0);
  if (id == "l-center") {
    // core length n' is odd: 2|u| + 2m + 1 with 2^m <= |u| < 2^(m+1); the
    // free leading symbol of even lengths doubles the count
    if (n == 0) return BigInt(0);
    const std::size_t core = n % 2 == 1 ? n : n - 1;
    for (std::size_t m = 0; (std::size_t{2} << m) + 2 * m + 1 <= core; ++m) {
      const std::size_t u = (core - 2 * m - 1) / 2;
      if (u >= (std::size_t{1} << m) && u < (std::size_t{2} << m)) return pow_int(2, n - 2 * m - 1);
    }
    return BigInt(0);
  }
  return std::nullopt;
}

struct JointCounts {
  BigInt both, only_l, only_a, neither;
  BigInt total() const { return both + only_l + only_a + neither; }
};

inline JointCounts joint_counts(const std::vector<std::uint8_t>& l,
                                const std::vector<std::uint8_t>& a) {
  if (l.size() != a.size()) throw input_error("membership slices differ in length");
  std::uint64_t c[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < l.size(); ++i) ++c[(l[i] ? 2 : 0) + (a[i] ? 1 : 0)];
  return {c[3], c[2], c[1], c[0]};
}

inline JointCounts joint_counts(const LanguageOracle& l, const LanguageOracle& a, std::size_t n,
                                const CensusOptions& opt = {}) {
  if (!(l.alphabet == a.alphabet)) throw input_error("languages are over different alphabets");
  return joint_counts(membership_slice(l, n, opt), membership_slice(a, n, opt));
}

// ℓ, ℓ', ℓ'' and δ from joint counts.

inline Rational agreement(const JointCounts& j) {
  return abs_ratio(make_ratio(j.only_l + j.only_a, j.total()) - Rational(1, 2));
}

inline Rational conditional_balance(const JointCounts& j) {
  const BigInt dense_a = j.both + j.only_a;
  if (dense_a == 0) throw undefined_ratio_error("dense(A)(n) = 0: conditional balance undefined");
  return abs_ratio(make_ratio(j.both, dense_a) - Rational(1, 2));
}

inline Rational signed_balance(const JointCounts& j) {
  return abs_ratio(make_ratio(j.both - j.only_a, j.total()));
}

inline Rational almost_equal_gap(const JointCounts& j) {
  return make_ratio(j.only_l + j.only_a, j.total());
}

inline Rational agreement(const LanguageOracle& l, const LanguageOracle& a, std::size_t n,
                          const CensusOptions& opt = {}) {
  return agreement(joint_counts(l, a, n, opt));
}

inline Rational conditional_balance(const LanguageOracle& l, const LanguageOracle& a,
                                    std::size_t n, const CensusOptions& opt = {}) {
  return conditional_balance(joint_counts(l, a, n, opt));
}

inline Rational signed_balance(const LanguageOracle& l, const LanguageOracle& a, std::size_t n,
                               const CensusOptions& opt = {}) {
  return signed_balance(joint_counts(l, a, n, opt));
}

inline Rational almost_equal_gap(const LanguageOracle& a, const LanguageOracle& b, std::size_t n,
                                 const CensusOptions& opt = {}) {
  return almost_equal_gap(joint_counts(a, b, n, opt));
}

struct PdenseResult {
  bool ok = true;
  std::size_t tightest_n = 0;
  Rational tightest_ratio;  // dense(L)(n) * n^d / |Σ|^n at tightest_n
  std::size_t failures = 0;
  std::vector<std::size_t> failing;
};

/// Checks dense(L)(n) >= |Σ|^n / n^d over [lo, hi]; the tightest n is the one
/// minimising dense(L)(n) * n^d / |Σ|^n.
inline PdenseResult pdense_check(const LanguageOracle& l, unsigned d, std::size_t lo,
                                 std::size_t hi, const CensusOptions& opt = {}) {
  if (lo > hi) throw input_error("empty length range");
  if (lo == 0) throw input_error("p-denseness is checked for n >= 1");
  PdenseResult r;
  bool first = true;
  for (std::size_t n = lo; n <= hi; ++n) {
    Rational ratio = make_ratio(density(l, n, opt) * pow_int(n, d), pow_int(l.alphabet.size(), n));
    if (ratio < 1) {
      r.ok = false;
      ++r.failures;
      r.failing.push_back(n);
    }
    if (first || ratio < r.tightest_ratio) {
      r.tightest_ratio = ratio;
      r.tightest_n = n;
      first = false;
    }
  }
  return r;
}

/// Number of classes of Σ^n under "xz ∈ L iff yz ∈ L for every |z| <= t".
inline std::uint64_t nerode_lower_bound(const LanguageOracle& l, std::size_t n, std::size_t t,
                                        const CensusOptions& opt = {}) {
  const std::size_t sigma = l.alphabet.size();
  const std::uint64_t words = slice_size(sigma, n, opt.budget);
  std::uint64_t extensions = 0;
  for (std::size_t j = 0; j <= t; ++j) extensions += power_saturating(sigma, j);
  if (words > opt.budget / extensions)
    throw budget_error("nerode class count: |Σ^n| * |Σ^{<=t}| exceeds the budget");

  std::vector<std::vector<std::uint8_t>> sigs(words);
  for_each_chunk(words, opt.workers, [&](std::uint64_t, std::uint64_t b, std::uint64_t e) {
    Word x = word_at(b, sigma, n);
    for (std::uint64_t i = b; i < e; ++i) {
      auto& sig = sigs[i];
      sig.reserve(extensions);
      for (std::size_t j = 0; j <= t; ++j) {
        Word z(j, 0);
        do sig.push_back(l.member(concat(x, z)) ? 1 : 0);
        while (next_word(z, sigma));
      }
      next_word(x, sigma);
    }
  });
  std::set<std::vector<std::uint8_t>> classes(sigs.begin(), sigs.end());
  return classes.size();
}

// ---------------------------------------------------------------------------
// Reports.

enum class CensusMethod { Enumeration, DfaDp, ClosedForm };

inline const char* to_string(CensusMethod m) {
  switch (m) {
    case CensusMethod::Enumeration: return "enumeration";
    case CensusMethod::DfaDp: return "dfa-dp";
    case CensusMethod::ClosedForm: return "closed-form";
  }
  return "?";
}

struct CensusRow {
  std::size_t n;
  BigInt count;
  Rational ratio;  // count / |Σ|^n
  std::optional<BigInt> closed_form;
};

struct CensusReport {
  std::vector<std::string> languages;
  std::size_t alphabet_size = 0;
  CensusMethod method = CensusMethod::Enumeration;
  std::vector<CensusRow> rows;
};

/// Density table over [lo, hi]. With enumeration, a closed form (when one is
/// known) is computed too and any disagreement is an invariant_error.
inline CensusReport density_report(const LanguageOracle& l, std::size_t lo, std::size_t hi,
                                   CensusMethod method, const CensusOptions& opt = {},
                                   const Dfa* dfa = nullptr) {
  if (lo > hi) throw input_error("empty length range");
  CensusReport rep{{l.name}, l.alphabet.size(), method, {}};
  for (std::size_t n = lo; n <= hi; ++n) {
    CensusRow row{n, 0, 0, closed_form_density(l.name, n)};
    switch (method) {
      case CensusMethod::Enumeration:
        row.count = density(l, n, opt);
        if (row.closed_form && *row.closed_form != row.count)
          throw invariant_error("closed form and enumeration disagree for " + l.name + " at n=" +
                                std::to_string(n));
        break;
      case CensusMethod::DfaDp:
        if (!dfa) throw input_error("dfa method needs an automaton");
        row.count = count_accepted(*dfa, n);
        break;
      case CensusMethod::ClosedForm:
        if (!row.closed_form) throw input_error("no closed form known for " + l.name);
        row.count = *row.closed_form;
        break;
    }
    row.ratio = make_ratio(row.count, pow_int(l.alphabet.size(), n));
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace cflrand

#endif  // CFLRAND_CENSUS_HPP
