#pragma once

#include <array>
#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "furst/errors.hpp"

namespace furst::io {

// Locale-independent decimal text, 17 significant digits: enough to
// round-trip any binary64 exactly.
inline std::string format_double(double v) {
  std::array<char, 64> buf;
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  if (ec != std::errc()) throw internal_error("format_double: conversion failed");
  return std::string(buf.data(), end);
}

// One table cell: integer, real, text, or empty (a column that does not
// apply to this row, e.g. gap bounds at q below the golden ratio).
struct Cell {
  enum class Kind { Integer, Real, Text, Empty };
  Kind kind = Kind::Empty;
  std::int64_t i = 0;
  double d = 0.0;
  std::string s;

  static Cell integer(std::int64_t v) { return {Kind::Integer, v, 0.0, {}}; }
  static Cell real(double v) { return {Kind::Real, 0, v, {}}; }
  static Cell text(std::string v) { return {Kind::Text, 0, 0.0, std::move(v)}; }
  static Cell empty() { return {}; }
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

namespace detail {

inline void require_rectangular(const Table& t) {
  for (const auto& row : t.rows)
    if (row.size() != t.columns.size())
      throw internal_error("table row width does not match header");
}

// Quote only when the text would break the row structure.
inline void write_csv_text(std::ostream& out, const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    out << s;
    return;
  }
  out << '"';
  for (char ch : s) {
    if (ch == '"') out << '"';
    out << ch;
  }
  out << '"';
}

}  // namespace detail

// Header row, comma separators, '.' decimals, empty string for empty cells.
inline void write_csv(std::ostream& out, const Table& t) {
  detail::require_rectangular(t);
  for (std::size_t c = 0; c < t.columns.size(); ++c)
    out << (c ? "," : "") << t.columns[c];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      switch (row[c].kind) {
        case Cell::Kind::Integer: out << row[c].i; break;
        case Cell::Kind::Real: out << format_double(row[c].d); break;
        case Cell::Kind::Text: detail::write_csv_text(out, row[c].s); break;
        case Cell::Kind::Empty: break;
      }
    }
    out << '\n';
  }
}

// Array of objects mirroring the CSV fields; empty cells become null.
inline void write_json(std::ostream& out, const Table& t) {
  detail::require_rectangular(t);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t c = 0; c < row.size(); ++c) {
      switch (row[c].kind) {
        case Cell::Kind::Integer: obj[t.columns[c]] = row[c].i; break;
        case Cell::Kind::Real: obj[t.columns[c]] = row[c].d; break;
        case Cell::Kind::Text: obj[t.columns[c]] = row[c].s; break;
        case Cell::Kind::Empty: obj[t.columns[c]] = nullptr; break;
      }
    }
    rows.push_back(std::move(obj));
  }
  out << rows.dump(2) << '\n';
}

}  // namespace furst::io
