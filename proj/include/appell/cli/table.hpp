#pragma once

#include <cmath>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "appell/cli/config.hpp"
#include "appell/cli/parse.hpp"

namespace appell::cli {

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

namespace detail {

inline std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace detail

/// CSV with a header row; doubles as %.17g, so output is byte-stable.
inline void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t k = 0; k < t.columns.size(); ++k) os << (k ? "," : "") << t.columns[k];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << detail::csv_field(detail::cell_text(row[k]));
    os << "\n";
  }
}

/// Array of records, keys in column order; non-finite doubles become null.
inline void write_json(std::ostream& os, const Table& t) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json rec = nlohmann::ordered_json::object();
    for (std::size_t k = 0; k < row.size(); ++k) {
      const Cell& c = row[k];
      if (const auto* d = std::get_if<double>(&c))
        rec[t.columns[k]] = std::isfinite(*d) ? nlohmann::ordered_json(*d) : nlohmann::ordered_json(nullptr);
      else if (const auto* i = std::get_if<long long>(&c))
        rec[t.columns[k]] = *i;
      else
        rec[t.columns[k]] = std::get<std::string>(c);
    }
    arr.push_back(std::move(rec));
  }
  os << arr.dump(1) << "\n";
}

/// Whitespace-separated data with a commented header, strings quoted.
inline void write_gnuplot(std::ostream& os, const Table& t) {
  os << "#";
  for (const auto& c : t.columns) os << " " << c;
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) os << " ";
      if (std::holds_alternative<std::string>(row[k]))
        os << '"' << std::get<std::string>(row[k]) << '"';
      else
        os << detail::cell_text(row[k]);
    }
    os << "\n";
  }
}

inline void write_table(std::ostream& os, const Table& t, Format f) {
  switch (f) {
    case Format::csv: write_csv(os, t); break;
    case Format::json: write_json(os, t); break;
    case Format::gnuplot: write_gnuplot(os, t); break;
  }
}

inline const char* extension(Format f) {
  switch (f) {
    case Format::csv: return ".csv";
    case Format::json: return ".json";
    default: return ".dat";
  }
}

}  // namespace appell::cli
