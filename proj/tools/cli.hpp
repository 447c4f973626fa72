#ifndef CFLRAND_TOOLS_CLI_HPP
#define CFLRAND_TOOLS_CLI_HPP

#include "cflrand/cflrand.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace cflrand::cli {

inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kCheckFailed = 2;

struct Range {
  std::size_t lo = 0, hi = 0;
};

/// "a..b" or a single number.
inline Range parse_range(const std::string& text) {
  auto to_num = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw input_error("bad range '" + text + "'");
    return static_cast<std::size_t>(std::stoull(s));
  };
  auto dots = text.find("..");
  Range r;
  if (dots == std::string::npos) {
    r.lo = r.hi = to_num(text);
  } else {
    r.lo = to_num(text.substr(0, dots));
    r.hi = to_num(text.substr(dots + 2));
  }
  if (r.lo > r.hi) throw input_error("empty range '" + text + "'");
  return r;
}

struct Common {
  std::string format = "json";
  std::string out_path;
  unsigned workers = default_workers();
};

inline Format format_of(const Common& c) { return c.format == "csv" ? Format::Csv : Format::Json; }

inline CensusOptions census_options(const Common& c) {
  CensusOptions o;
  o.workers = c.workers;
  return o;
}

inline void add_common(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--out", c.out_path, "Write the report to this file instead of stdout");
  app->add_option("--workers", c.workers, "Worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);
}

/// A language given by id, or by an automaton file (dfa or advised).
inline LanguageOracle resolve_language(const std::string& id, const std::string& file) {
  if (!file.empty()) {
    auto a = load_automaton(file);
    if (auto* d = std::get_if<Dfa>(&a)) return oracle_from_dfa(*d, file);
    if (auto* m = std::get_if<AdvisedDfa>(&a)) return oracle_from_advised(*m, file);
    auto p = std::get<Pda>(a);
    Alphabet in = p.input_alphabet();
    return {file, in, [p](const Word& w) { return accepts(p, w); }};
  }
  if (id.empty()) throw input_error("a language id or automaton file is required");
  return oracle(id);
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(int argc, const char* const* argv);

 private:
  void emit_report(const Report& r) {
    if (common_.out_path.empty()) {
      emit(out_, r, format_of(common_));
      return;
    }
    std::ofstream f(common_.out_path);
    if (!f) throw input_error("cannot write '" + common_.out_path + "'");
    emit(f, r, format_of(common_));
  }

  int density_cmd();
  int agree_cmd();
  int balance_cmd();
  int probe_cmd();
  int pump_cmd();
  int nerode_cmd();
  int swap_cmd();
  int disc_cmd();
  int recur_cmd();
  int prg_gen_cmd();
  int prg_verify_cmd();
  int prg_fool_cmd();

  std::ostream& out_;
  std::ostream& err_;
  Common common_;

  // shared option storage
  std::string language_, automaton_, against_, against_file_, n_range_ = "0..10", method_ = "enum";
  std::string word_, model_, checks_ = "brute,delta,growth", bits_;
  std::size_t max_states_ = 3, horizon_ = 16, i_max_ = 8, half_len_ = 6, m_ = 5,
              imax_ = 15, n_max_ = 16, n_min_ = 1;
  std::uint64_t cap_ = 1'000'000, trials_ = 1000, seed_ = 42;
  long long split_ = -1, t_opt_ = -1;
  bool pump_down_ = false;
  unsigned bound_c_ = 8;
};

inline int Runner::density_cmd() {
  LanguageOracle l = resolve_language(language_, automaton_);
  Range r = parse_range(n_range_);
  CensusMethod m = method_ == "dfa"      ? CensusMethod::DfaDp
                   : method_ == "closed" ? CensusMethod::ClosedForm
                                         : CensusMethod::Enumeration;
  std::optional<Dfa> dfa;
  if (m == CensusMethod::DfaDp) {
    if (automaton_.empty()) throw input_error("--method dfa needs --automaton");
    auto a = load_automaton(automaton_);
    if (!std::holds_alternative<Dfa>(a)) throw input_error("--method dfa needs a dfa document");
    dfa = std::get<Dfa>(a);
  }
  CensusReport c = density_report(l, r.lo, r.hi, m, census_options(common_), dfa ? &*dfa : nullptr);
  Report rep;
  rep.title = "density";
  rep.set("language", l.name).set("alphabet_size", l.alphabet.size()).set("method", to_string(m));
  rep.columns = {"n", "count", "ratio"};
  for (const auto& row : c.rows)
    rep.add_row({static_cast<std::int64_t>(row.n), row.count, row.ratio});
  emit_report(rep);
  return kOk;
}

inline int Runner::agree_cmd() {
  LanguageOracle l = resolve_language(language_, automaton_);
  LanguageOracle a = resolve_language(against_, against_file_);
  Range r = parse_range(n_range_);
  Report rep;
  rep.title = "agreement";
  rep.set("language", l.name).set("against", a.name);
  rep.columns = {"n", "ell", "gap"};
  for (std::size_t n = r.lo; n <= r.hi; ++n) {
    auto j = joint_counts(l, a, n, census_options(common_));
    rep.add_row({static_cast<std::int64_t>(n), agreement(j), almost_equal_gap(j)});
  }
  emit_report(rep);
  return kOk;
}

inline int Runner::balance_cmd() {
  LanguageOracle l = resolve_language(language_, automaton_);
  LanguageOracle a = resolve_language(against_, against_file_);
  Range r = parse_range(n_range_);
  Report rep;
  rep.title = "balance";
  rep.set("language", l.name).set("against", a.name);
  rep.columns = {"n", "dense_a", "conditional_defined", "conditional", "signed"};
  for (std::size_t n = r.lo; n <= r.hi; ++n) {
    auto j = joint_counts(l, a, n, census_options(common_));
    const bool defined = (j.both + j.only_a) > 0;
    rep.add_row({static_cast<std::int64_t>(n), BigInt(j.both + j.only_a), defined,
                 defined ? conditional_balance(j) : Rational(0), signed_balance(j)});
  }
  emit_report(rep);
  return kOk;
}

inline int Runner::probe_cmd() {
  LanguageOracle l = resolve_language(language_, automaton_);
  ProbeResult p = immunity_probe(l, max_states_, horizon_, cap_, common_.workers);
  Report rep;
  rep.title = "probe";
  rep.set("language", l.name)
      .set("max_states", max_states_)
      .set("horizon", horizon_)
      .set("cap", cap_)
      .set("checked", p.checked)
      .set("infinite", p.infinite)
      .set("inconclusive", p.inconclusive)
      .set("note", "survivors show non-immunity up to the horizon; none found is not a proof");
  rep.columns = {"index", "states", "finals"};
  Json survivors = Json::array();
  for (std::size_t i = 0; i < p.survivors.size(); ++i) {
    const Dfa& d = p.survivors[i];
    std::int64_t finals = 0;
    for (bool f : d.finals()) finals += f;
    rep.add_row({static_cast<std::int64_t>(i), static_cast<std::int64_t>(d.size()), finals});
    survivors.push_back(to_json(d));
  }
  rep.extra["survivors"] = std::move(survivors);
  emit_report(rep);
  return kOk;
}

inline int Runner::pump_cmd() {
  if (automaton_.empty()) throw input_error("pump needs --automaton");
  auto a = load_automaton(automaton_);
  if (!std::holds_alternative<Dfa>(a)) throw input_error("pump needs a dfa document");
  const Dfa& d = std::get<Dfa>(a);
  Word w = d.alphabet().parse(word_);
  auto p = pump_decompose(d, w);
  Report rep;
  rep.title = "pump";
  rep.set("word", word_)
      .set("x", d.alphabet().render(p.x))
      .set("y", d.alphabet().render(p.y))
      .set("z", d.alphabet().render(p.z));
  rep.columns = {"i", "word", "in_language"};
  if (!language_.empty()) {
    LanguageOracle l = oracle(language_);
    if (!(l.alphabet == d.alphabet())) throw input_error("dfa and language alphabets differ");
    for (std::size_t i = 0; i <= i_max_; ++i) {
      Word v = pump(p, i);
      rep.add_row({static_cast<std::int64_t>(i), d.alphabet().render(v), l.member(v)});
    }
    auto ref = pump_refute(d, l, w, i_max_, pump_down_);
    rep.set("language", l.name);
    rep.set("refuted", ref.has_value());
    if (ref) rep.set("refuting_i", ref->i).set("refuting_word", d.alphabet().render(ref->word));
  }
  emit_report(rep);
  return kOk;
}

inline int Runner::nerode_cmd() {
  LanguageOracle l = resolve_language(language_, automaton_);
  Range r = parse_range(n_range_);
  Report rep;
  rep.title = "nerode";
  rep.set("language", l.name);
  rep.columns = {"n", "t", "classes"};
  for (std::size_t n = r.lo; n <= r.hi; ++n) {
    std::size_t t = t_opt_ < 0 ? n : static_cast<std::size_t>(t_opt_);
    rep.add_row({static_cast<std::int64_t>(n), static_cast<std::int64_t>(t),
                 static_cast<std::int64_t>(nerode_lower_bound(l, n, t, census_options(common_)))});
  }
  emit_report(rep);
  return kOk;
}

inline int Runner::swap_cmd() {
  AdvisedDfa m = [&] {
    if (!automaton_.empty()) {
      auto a = load_automaton(automaton_);
      if (!std::holds_alternative<AdvisedDfa>(a)) throw input_error("swap needs an advised document");
      return std::get<AdvisedDfa>(a);
    }
    return advised_model(model_.empty() ? "l-keq:3" : model_);
  }();
  Range r = parse_range(n_range_);
  Report rep;
  rep.title = "swap";
  rep.set("model", automaton_.empty() ? (model_.empty() ? "l-keq:3" : model_) : automaton_);
  rep.columns = {"n", "split", "blocks", "accepted", "closed"};
  bool all = true;
  for (std::size_t n = r.lo; n <= r.hi; ++n) {
    std::size_t lo = split_ < 0 ? 0 : static_cast<std::size_t>(split_);
    std::size_t hi = split_ < 0 ? n : std::min<std::size_t>(n, lo);
    for (std::size_t s = lo; s <= hi; ++s) {
      auto p = swap_partition(m, n, s);
      std::int64_t acc = 0;
      for (const auto& b : p.blocks) acc += static_cast<std::int64_t>(b.size());
      bool ok = swap_verify(p);
      all = all && ok;
      rep.add_row({static_cast<std::int64_t>(n), static_cast<std::int64_t>(s),
                   static_cast<std::int64_t>(p.blocks.size()), acc, ok});
    }
  }
  rep.set("all_closed", all);
  emit_report(rep);
  return all ? kOk : kCheckFailed;
}

inline int Runner::disc_cmd() {
  auto d = discrepancy_bound_check(half_len_, trials_, seed_);
  std::vector<std::uint64_t> full;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << half_len_); ++x) full.push_back(x);
  Rational full_disc = ip_discrepancy(half_len_, full, full);
  Report rep;
  rep.title = "discrepancy";
  rep.set("half_len", half_len_).set("n", 2 * half_len_).set("trials", trials_).set("seed", seed_);
  rep.columns = {"trials", "max_disc", "max_bound_ratio", "violations", "full_rectangle"};
  rep.add_row({static_cast<std::int64_t>(trials_), d.max_disc, d.max_bound_ratio,
               static_cast<std::int64_t>(d.violations), full_disc});
  emit_report(rep);
  return d.ok() ? kOk : kCheckFailed;
}

inline int Runner::recur_cmd() {
  RecurrenceTable t = a_table(m_, imax_);
  Report rep;
  rep.title = "recurrence";
  rep.set("m", m_).set("imax", imax_);
  rep.columns = {"i", "S"};
  for (std::size_t k = 1; k <= m_; ++k) rep.columns.push_back("a" + std::to_string(k));
  for (std::size_t i = t.first; i <= t.last(); ++i) {
    std::vector<Cell> row{static_cast<std::int64_t>(i), t.sum(i)};
    for (std::size_t k = 1; k <= m_; ++k) row.push_back(t.a(k, i));
    rep.add_row(std::move(row));
  }
  bool ok = true;
  std::stringstream ss(checks_);
  for (std::string c; std::getline(ss, c, ',');) {
    if (c == "brute") {
      bool match = true;
      const std::size_t top = std::min<std::size_t>(imax_, 22);
      for (std::size_t i = t.first; i <= top; ++i) {
        auto b = a_brute(m_, i);
        for (std::size_t k = 1; k <= m_; ++k) match = match && b[k - 1] == t.a(k, i);
      }
      rep.set("brute_checked_up_to", top).set("brute_match", match);
      ok = ok && match;
    } else if (c == "delta") {
      const std::size_t m0 = m_ / 2;
      const std::size_t i_hi = (imax_ - 1) / 2;
      bool pass = i_hi >= m0 ? delta_check(m_, m0, i_hi, 0, m0 - 1) : true;
      rep.set("delta_pass", pass);
      ok = ok && pass;
    } else if (c == "growth") {
      GrowthFit g = growth_fit(t);
      bool sg = s_growth_check(t);
      rep.set("growth_estimate", g.estimate)
          .set("growth_two_step", g.two_step)
          .set("two_step_bound", exact_string(g.two_step_bound))
          .set("growth_below_two", g.below_two())
          .set("s_growth_pass", sg);
      ok = ok && g.below_two() && sg;
    } else if (!c.empty()) {
      throw input_error("unknown check '" + c + "'");
    }
  }
  rep.set("ok", ok);
  emit_report(rep);
  return ok ? kOk : kCheckFailed;
}

inline int Runner::prg_gen_cmd() {
  Word w = Alphabet::binary().parse(bits_);
  Report rep;
  rep.title = "prg-gen";
  rep.columns = {"input", "output"};
  rep.add_row({bits_, Alphabet::binary().render(g_generate(w))});
  emit_report(rep);
  return kOk;
}

inline int Runner::prg_verify_cmd() {
  if (n_min_ == 0) throw input_error("--n-min must be at least 1");
  Report rep;
  rep.title = "prg-verify";
  rep.set("n_min", n_min_).set("n_max", n_max_);
  rep.columns = {"n", "range_size", "expected_size", "tau", "singletons", "pairs", "range_equals_ip", "ok"};
  bool all = true;
  for (std::size_t n = n_min_; n <= n_max_; ++n) {
    GeneratorRow g = generator_row(n, common_.workers);
    const BigInt expected = g_expected_range_size(n);
    const std::uint64_t ones = g.histogram.count(1) ? g.histogram.at(1) : 0;
    const std::uint64_t twos = g.histogram.count(2) ? g.histogram.at(2) : 0;
    const std::uint64_t half = std::uint64_t{1} << (n / 2);
    const bool ok = g.range_equals_ip && g.range_size == expected &&
                    g.tau == make_ratio(pow_int(2, n / 2), pow_int(2, n)) && twos == half &&
                    BigInt(ones) == pow_int(2, n) - BigInt(2 * half) && g.histogram.size() <= 2;
    all = all && ok;
    rep.add_row({static_cast<std::int64_t>(n), g.range_size, expected, g.tau,
                 static_cast<std::int64_t>(ones), static_cast<std::int64_t>(twos),
                 g.range_equals_ip, ok});
  }
  rep.set("ok", all);
  emit_report(rep);
  return all ? kOk : kCheckFailed;
}

inline int Runner::prg_fool_cmd() {
  Range r = parse_range(n_range_);
  if (r.hi > 20) throw budget_error("fooling statistics are exact only up to n = 20");
  Report rep;
  rep.title = "prg-fool";
  rep.set("bound", std::to_string(bound_c_) + " * 2^(-n/4)");
  bool all = true;
  if (!automaton_.empty()) {
    auto a = load_automaton(automaton_);
    rep.set("distinguisher", automaton_);
    rep.columns = {"n", "ell", "within_bound"};
    for (std::size_t n = r.lo; n <= r.hi; ++n) {
      FoolingHarness h(n, common_.workers);
      Rational ell;
      if (auto* d = std::get_if<Dfa>(&a)) ell = h.stat(*d);
      else if (auto* m = std::get_if<AdvisedDfa>(&a)) ell = h.stat(*m);
      else throw input_error("distinguisher must be a dfa or advised document");
      const bool ok = within_fooling_bound(ell, n, bound_c_);
      all = all && ok;
      rep.add_row({static_cast<std::int64_t>(n), ell, ok});
    }
  } else {
    FoolingSuite s = fool_suite(max_states_, r.lo, r.hi, common_.workers);
    rep.set("max_states", max_states_).set("machines", s.machines.size());
    rep.columns = {"n", "max_ell", "argmax", "within_bound"};
    for (const auto& [n, ell] : s.max_by_n) {
      const bool ok = within_fooling_bound(ell, n, bound_c_);
      all = all && ok;
      rep.add_row({static_cast<std::int64_t>(n), ell,
                   static_cast<std::int64_t>(s.argmax_by_n.at(n)), ok});
    }
  }
  rep.set("ok", all);
  emit_report(rep);
  return all ? kOk : kCheckFailed;
}

inline int Runner::run(int argc, const char* const* argv) {
  CLI::App app{"Exact censuses, immunity probes and generator checks for small automata"};
  app.require_subcommand(1);
  app.fallthrough();
  add_common(&app, common_);

  auto lang_opts = [&](CLI::App* sub) {
    sub->add_option("--language,-l", language_, "Language id, e.g. equal-star, pal-sharp, l-keq:3");
    sub->add_option("--automaton,-a", automaton_, "Automaton JSON file");
  };

  int (Runner::*action)() = nullptr;
  auto bind = [&](CLI::App* sub, int (Runner::*fn)()) {
    sub->callback([&action, fn] { action = fn; });
  };

  auto* density = app.add_subcommand("density", "Exact density dense(L)(n) = |L ∩ Σ^n|");
  lang_opts(density);
  density->add_option("--n", n_range_, "Length or range a..b")->required();
  density->add_option("--method", method_, "Census backend")->check(CLI::IsMember({"enum", "dfa", "closed"}));
  bind(density, &Runner::density_cmd);

  auto* agree = app.add_subcommand(
      "agree", "Agreement statistic ℓ(n) = |dense(L△A)(n)/|Σ^n| - 1/2| and the gap δ(n)");
  lang_opts(agree);
  agree->add_option("--against", against_, "Language id of A");
  agree->add_option("--against-file", against_file_, "Automaton file defining A");
  agree->add_option("--n", n_range_, "Length or range a..b")->required();
  bind(agree, &Runner::agree_cmd);

  auto* balance = app.add_subcommand(
      "balance", "Conditional balance ℓ'(n) within A and signed balance ℓ''(n)");
  lang_opts(balance);
  balance->add_option("--against", against_, "Language id of A");
  balance->add_option("--against-file", against_file_, "Automaton file defining A");
  balance->add_option("--n", n_range_, "Length or range a..b")->required();
  bind(balance, &Runner::balance_cmd);

  auto* probe = app.add_subcommand(
      "probe", "Immunity probe: small DFAs with an infinite language inside L up to a horizon");
  lang_opts(probe);
  probe->add_option("--max-states", max_states_, "Largest DFA size");
  probe->add_option("--horizon", horizon_, "Longest word checked");
  probe->add_option("--cap", cap_, "Words checked per DFA before giving up");
  bind(probe, &Runner::probe_cmd);

  auto* pumpc = app.add_subcommand("pump", "Pumping-lemma decomposition xyz and refutation search");
  lang_opts(pumpc);
  pumpc->add_option("--word,-w", word_, "Accepted word to decompose")->required();
  pumpc->add_option("--i-max", i_max_, "Largest pumping exponent");
  pumpc->add_flag("--pump-down", pump_down_, "Also try i = 0");
  bind(pumpc, &Runner::pump_cmd);

  auto* nerode = app.add_subcommand(
      "nerode", "Myhill-Nerode classes of Σ^n separated by extensions of length <= t");
  lang_opts(nerode);
  nerode->add_option("--n", n_range_, "Length or range a..b")->required();
  nerode->add_option("--t", t_opt_, "Extension length (default n)");
  bind(nerode, &Runner::nerode_cmd);

  auto* swap = app.add_subcommand(
      "swap", "Swapping-property partition of an advised regular slice");
  swap->add_option("--model", model_, "Advised model: l-keq:K or l-even");
  swap->add_option("--automaton,-a", automaton_, "Advised automaton JSON file");
  swap->add_option("--n", n_range_, "Length or range a..b")->required();
  swap->add_option("--split", split_, "Split point (default: every split)");
  bind(swap, &Runner::swap_cmd);

  auto* disc = app.add_subcommand(
      "disc", "Inner-product matrix discrepancy on random rectangles");
  disc->add_option("--half-len", half_len_, "Row/column word length")->check(CLI::Range(0, 13));
  disc->add_option("--trials", trials_, "Random rectangles");
  disc->add_option("--seed", seed_, "PRNG seed");
  bind(disc, &Runner::disc_cmd);

  auto* recur = app.add_subcommand(
      "recur", "Window-count recurrence a^(k)_i, its sums S_i and their checks");
  recur->add_option("--m", m_, "Odd window parameter >= 3");
  recur->add_option("--imax", imax_, "Last index");
  recur->add_option("--check", checks_, "Comma list of brute,delta,growth");
  bind(recur, &Runner::recur_cmd);

  auto* prg = app.add_subcommand("prg", "The stretch-by-one generator G");
  prg->require_subcommand(1);
  auto* gen = prg->add_subcommand("gen", "Print G(w)");
  gen->add_option("bits", bits_, "Seed word over {0,1}")->required();
  bind(gen, &Runner::prg_gen_cmd);
  auto* verify = prg->add_subcommand("verify", "Range = IP*, range size and preimage census");
  verify->add_option("--n-min", n_min_, "Smallest seed length");
  verify->add_option("--n-max", n_max_, "Largest seed length");
  bind(verify, &Runner::prg_verify_cmd);
  auto* fool = prg->add_subcommand("fool", "Fooling statistic ℓ_B(n) against small DFAs");
  fool->add_option("--max-states", max_states_, "Largest DFA size");
  fool->add_option("--automaton,-a", automaton_, "Single distinguisher file (dfa or advised)");
  fool->add_option("--n", n_range_, "Seed length or range a..b")->required();
  fool->add_option("--bound", bound_c_, "Constant c in c * 2^(-n/4)");
  bind(fool, &Runner::prg_fool_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out_, err_);
    return code == 0 ? kOk : kUsage;
  }
  try {
    if (!action) throw input_error("no command given");
    return (this->*action)();
  } catch (const invariant_error& e) {
    err_ << "check failed: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const budget_error& e) {
    err_ << "budget exceeded: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err_ << "error: " << e.what() << '\n';
    return kUsage;
  }
}

/// Entry point usable in-process by tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Runner r(out, err);
  return r.run(argc, argv);
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"cflrand"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace cflrand::cli

#endif  // CFLRAND_TOOLS_CLI_HPP
