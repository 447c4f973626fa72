#ifndef CFLRAND_REPORT_HPP
#define CFLRAND_REPORT_HPP

#include "cflrand/numeric.hpp"

#include <json.hpp>

#include <cstdint>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cflrand {

using Json = nlohmann::ordered_json;

/// One table cell. Rationals are exact; doubles are for presentation only.
using Cell = std::variant<std::int64_t, BigInt, Rational, std::string, bool, double>;

/// A titled table plus ordered metadata and optional structured extras.
/// Emission is deterministic: field order is insertion order.
struct Report {
  std::string title;
  std::vector<std::pair<std::string, Json>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  Json extra = Json::object();

  Report& set(std::string key, Json value) {
    for (auto& [k, v] : meta)
      if (k == key) {
        v = std::move(value);
        return *this;
      }
    meta.emplace_back(std::move(key), std::move(value));
    return *this;
  }

  void add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("report row width mismatch");
    rows.push_back(std::move(row));
  }
};

enum class Format { Json, Csv };

inline Json big_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return v.str();
}

inline Json rational_to_json(const Rational& r) {
  Json j;
  j["exact"] = exact_string(r);
  j["decimal"] = r.convert_to<double>();
  return j;
}

inline Json cell_to_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BigInt>) return big_to_json(v);
        else if constexpr (std::is_same_v<T, Rational>) return rational_to_json(v);
        else return v;
      },
      c);
}

inline Json to_json(const Report& r) {
  Json j;
  j["report"] = r.title;
  for (const auto& [k, v] : r.meta) j[k] = v;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json o;
    for (std::size_t i = 0; i < row.size(); ++i) o[r.columns[i]] = cell_to_json(row[i]);
    rows.push_back(std::move(o));
  }
  j["rows"] = std::move(rows);
  for (auto it = r.extra.begin(); it != r.extra.end(); ++it) j[it.key()] = it.value();
  return j;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string format_double(double d) {
  std::ostringstream os;
  os.precision(12);
  os << d;
  return os.str();
}

}  // namespace detail

/// CSV: a Rational column `x` expands into `x_num,x_den`. Column kinds are
/// taken from the first row; an empty report prints the header only.
inline void write_csv(std::ostream& os, const Report& r) {
  std::vector<bool> rational(r.columns.size(), false);
  if (!r.rows.empty())
    for (std::size_t i = 0; i < r.columns.size(); ++i)
      rational[i] = std::holds_alternative<Rational>(r.rows.front()[i]);
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    if (i) os << ',';
    if (rational[i]) os << r.columns[i] << "_num," << r.columns[i] << "_den";
    else os << detail::csv_field(r.columns[i]);
  }
  os << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Rational>)
              os << boost::multiprecision::numerator(v) << ','
                 << boost::multiprecision::denominator(v);
            else if constexpr (std::is_same_v<T, bool>) os << (v ? "true" : "false");
            else if constexpr (std::is_same_v<T, std::string>) os << detail::csv_field(v);
            else if constexpr (std::is_same_v<T, double>) os << detail::format_double(v);
            else os << v;
          },
          row[i]);
    }
    os << '\n';
  }
}

inline void emit(std::ostream& os, const Report& r, Format f) {
  if (f == Format::Csv) write_csv(os, r);
  else os << to_json(r).dump(2) << '\n';
}

}  // namespace cflrand

#endif  // CFLRAND_REPORT_HPP
