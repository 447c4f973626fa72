#ifndef CFLRAND_AUTOMATON_IO_HPP
#define CFLRAND_AUTOMATON_IO_HPP

#include "cflrand/advised.hpp"
#include "cflrand/dfa.hpp"
#include "cflrand/errors.hpp"
#include "cflrand/pda.hpp"
#include "cflrand/report.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace cflrand {

// Automaton documents:
//   {type: "dfa"|"pda"|"advised", alphabet: ["0","1"], states, start, finals,
//    transitions}
// dfa: transitions[state][symbolIndex] -> state.
// pda: transitions is a list of {from, read (letter or null), top, to,
//      push (string over the stack alphabet, first letter on top), out};
//      the stack alphabet and initial stack letter are given by
//      stack_alphabet (default ["Z"]) and initial_stack (default its first
//      letter).
// advised: a dfa over track symbols; transitions[state][in*|Γ| + adv] with
//      Γ = advice_alphabet; advice maps lengths (as strings) to words.

namespace detail {

inline const Json& field(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw input_error(std::string("automaton document lacks field '") + name + "'");
  return *it;
}

inline Alphabet alphabet_field(const Json& j, const char* name) {
  const Json& a = field(j, name);
  if (!a.is_array()) throw input_error(std::string("'") + name + "' must be an array of strings");
  std::vector<std::string> letters;
  for (const auto& x : a) {
    if (!x.is_string() || x.get<std::string>().size() != 1)
      throw input_error(std::string("'") + name + "' entries must be single characters");
    letters.push_back(x.get<std::string>());
  }
  return Alphabet(std::move(letters));
}

inline std::size_t nat_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw input_error(std::string("'") + name + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

inline std::vector<bool> finals_field(const Json& j, std::size_t states) {
  std::vector<bool> finals(states, false);
  const Json& f = field(j, "finals");
  if (!f.is_array()) throw input_error("'finals' must be an array");
  for (const auto& x : f) {
    if (!x.is_number_integer() || x.get<std::int64_t>() < 0 ||
        static_cast<std::size_t>(x.get<std::int64_t>()) >= states)
      throw input_error("final state out of range");
    finals[x.get<std::size_t>()] = true;
  }
  return finals;
}

inline std::vector<State> dense_table(const Json& j, std::size_t states, std::size_t sigma) {
  const Json& t = field(j, "transitions");
  if (!t.is_array() || t.size() != states)
    throw input_error("'transitions' must have one row per state");
  std::vector<State> table;
  for (const auto& row : t) {
    if (!row.is_array() || row.size() != sigma)
      throw input_error("each transition row needs one entry per symbol");
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw input_error("transition targets must be integers");
      auto v = x.get<std::int64_t>();
      if (v < 0 || static_cast<std::size_t>(v) >= states)
        throw input_error("transition target out of range");
      table.push_back(static_cast<State>(v));
    }
  }
  return table;
}

inline Json letters_json(const Alphabet& a) {
  Json arr = Json::array();
  for (const auto& n : a.names()) arr.push_back(n);
  return arr;
}

inline Json finals_json(const std::vector<bool>& f) {
  Json arr = Json::array();
  for (std::size_t q = 0; q < f.size(); ++q)
    if (f[q]) arr.push_back(q);
  return arr;
}

inline Json table_json(const Dfa& d) {
  Json rows = Json::array();
  for (State q = 0; q < d.size(); ++q) {
    Json row = Json::array();
    for (Symbol s = 0; s < d.sigma(); ++s) row.push_back(d.step(q, s));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string type_of(const Json& j) {
  const Json& t = field(j, "type");
  if (!t.is_string()) throw input_error("'type' must be a string");
  return t.get<std::string>();
}

}  // namespace detail

inline Dfa dfa_from_json(const Json& j) {
  if (detail::type_of(j) != "dfa") throw input_error("expected a dfa document");
  Alphabet a = detail::alphabet_field(j, "alphabet");
  const std::size_t states = detail::nat_field(j, "states");
  return Dfa(a, states, static_cast<State>(detail::nat_field(j, "start")),
             detail::dense_table(j, states, a.size()), detail::finals_field(j, states));
}

inline Json to_json(const Dfa& d) {
  Json j;
  j["type"] = "dfa";
  j["alphabet"] = detail::letters_json(d.alphabet());
  j["states"] = d.size();
  j["start"] = d.start();
  j["finals"] = detail::finals_json(d.finals());
  j["transitions"] = detail::table_json(d);
  return j;
}

inline Pda pda_from_json(const Json& j) {
  if (detail::type_of(j) != "pda") throw input_error("expected a pda document");
  Alphabet in = detail::alphabet_field(j, "alphabet");
  Alphabet stack = j.contains("stack_alphabet") ? detail::alphabet_field(j, "stack_alphabet")
                                                : Alphabet("Z");
  StackSymbol initial = 0;
  if (j.contains("initial_stack")) {
    const Json& s = j["initial_stack"];
    if (!s.is_string()) throw input_error("'initial_stack' must be a letter");
    initial = stack.code(std::string_view(s.get_ref<const std::string&>()));
  }
  const std::size_t states = detail::nat_field(j, "states");
  const Json& t = detail::field(j, "transitions");
  if (!t.is_array()) throw input_error("pda 'transitions' must be a list of records");
  std::vector<PdaTransition> moves;
  for (const auto& r : t) {
    if (!r.is_object()) throw input_error("pda transition must be an object");
    PdaTransition m;
    m.from = static_cast<State>(detail::nat_field(r, "from"));
    m.to = static_cast<State>(detail::nat_field(r, "to"));
    const Json& read = detail::field(r, "read");
    if (!read.is_null()) {
      if (!read.is_string()) throw input_error("'read' must be a letter or null");
      m.read = in.code(std::string_view(read.get_ref<const std::string&>()));
    }
    const Json& top = detail::field(r, "top");
    if (!top.is_string()) throw input_error("'top' must be a stack letter");
    m.top = stack.code(std::string_view(top.get_ref<const std::string&>()));
    const Json& push = detail::field(r, "push");
    if (!push.is_string()) throw input_error("'push' must be a string");
    m.push = stack.parse(push.get<std::string>());
    if (r.contains("out") && !r["out"].is_null()) {
      if (!r["out"].is_string()) throw input_error("'out' must be a string");
      m.out = in.parse(r["out"].get<std::string>());
    }
    moves.push_back(std::move(m));
  }
  return Pda(in, stack, states, static_cast<State>(detail::nat_field(j, "start")), initial,
             detail::finals_field(j, states), std::move(moves));
}

inline Json to_json(const Pda& p) {
  Json j;
  j["type"] = "pda";
  j["alphabet"] = detail::letters_json(p.input_alphabet());
  j["stack_alphabet"] = detail::letters_json(p.stack_alphabet());
  j["initial_stack"] = p.stack_alphabet().name(p.initial_stack());
  j["states"] = p.size();
  j["start"] = p.start();
  j["finals"] = detail::finals_json(p.finals());
  Json moves = Json::array();
  for (const auto& t : p.transitions()) {
    Json r;
    r["from"] = t.from;
    r["read"] = t.read ? Json(p.input_alphabet().name(*t.read)) : Json(nullptr);
    r["top"] = p.stack_alphabet().name(t.top);
    r["to"] = t.to;
    r["push"] = p.stack_alphabet().render(t.push);
    r["out"] = p.input_alphabet().render(t.out);
    moves.push_back(std::move(r));
  }
  j["transitions"] = std::move(moves);
  return j;
}

/// Advised documents carry their advice as an explicit table.
inline AdvisedDfa advised_from_json(const Json& j) {
  if (detail::type_of(j) != "advised") throw input_error("expected an advised document");
  Alphabet in = detail::alphabet_field(j, "alphabet");
  Alphabet adv = detail::alphabet_field(j, "advice_alphabet");
  Alphabet track = track_alphabet(in, adv);
  const std::size_t states = detail::nat_field(j, "states");
  Dfa base(track, states, static_cast<State>(detail::nat_field(j, "start")),
           detail::dense_table(j, states, track.size()), detail::finals_field(j, states));
  std::map<std::size_t, Word> table;
  const Json& a = detail::field(j, "advice");
  if (!a.is_object()) throw input_error("'advice' must map lengths to words");
  for (auto it = a.begin(); it != a.end(); ++it) {
    std::size_t n = 0;
    try {
      std::size_t used = 0;
      n = std::stoul(it.key(), &used);
      if (used != it.key().size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw input_error("advice key '" + it.key() + "' is not a length");
    }
    if (!it.value().is_string()) throw input_error("advice words must be strings");
    table[n] = adv.parse(it.value().get<std::string>());
  }
  return AdvisedDfa(in, adv, std::move(base), advice_table(std::move(table)));
}

/// Serialises an advised DFA with its advice for lengths 0..max_len.
inline Json to_json(const AdvisedDfa& a, std::size_t max_len) {
  Json j;
  j["type"] = "advised";
  j["alphabet"] = detail::letters_json(a.input_alphabet());
  j["advice_alphabet"] = detail::letters_json(a.advice_alphabet());
  j["states"] = a.base().size();
  j["start"] = a.base().start();
  j["finals"] = detail::finals_json(a.base().finals());
  j["transitions"] = detail::table_json(a.base());
  Json adv = Json::object();
  for (std::size_t n = 0; n <= max_len; ++n)
    adv[std::to_string(n)] = a.advice_alphabet().render(a.advice(n));
  j["advice"] = std::move(adv);
  return j;
}

using Automaton = std::variant<Dfa, Pda, AdvisedDfa>;

inline Automaton automaton_from_json(const Json& j) {
  const std::string type = detail::type_of(j);
  if (type == "dfa") return dfa_from_json(j);
  if (type == "pda") return pda_from_json(j);
  if (type == "advised") return advised_from_json(j);
  throw input_error("unknown automaton type '" + type + "'");
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error(std::string("malformed automaton JSON: ") + e.what());
  }
}

inline Automaton load_automaton(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open automaton file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return automaton_from_json(parse_json_text(ss.str()));
}

}  // namespace cflrand

#endif  // CFLRAND_AUTOMATON_IO_HPP
