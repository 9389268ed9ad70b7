#pragma once

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "squidacc/error.hpp"

namespace squidacc {

/// Empty cells mark values that do not exist for a row (e.g. current beyond
/// the critical operating point).
using Cell = std::variant<std::monostate, double, std::string>;

struct Column {
  std::string name;
  std::string unit;  // empty for dimensionless or text columns
  std::vector<Cell> cells;

  std::string header() const { return unit.empty() ? name : name + "[" + unit + "]"; }
};

class SweepTable {
 public:
  SweepTable() = default;

  explicit SweepTable(std::vector<std::pair<std::string, std::string>> names_and_units) {
    for (auto& [name, unit] : names_and_units) columns_.push_back({name, unit, {}});
  }

  void add_row(std::vector<Cell> row) {
    detail::require(row.size() == columns_.size(), errc::configuration,
                    "row width does not match table");
    for (std::size_t i = 0; i < row.size(); ++i) columns_[i].cells.push_back(std::move(row[i]));
  }

  std::size_t rows() const noexcept { return columns_.empty() ? 0 : columns_.front().cells.size(); }
  const std::vector<Column>& columns() const noexcept { return columns_; }

  const Column& column(const std::string& name) const {
    for (const auto& c : columns_) {
      if (c.name == name) return c;
    }
    throw error(errc::configuration, "no column named " + name);
  }

  std::optional<double> number(const std::string& name, std::size_t row) const {
    const auto& cell = column(name).cells.at(row);
    if (const auto* v = std::get_if<double>(&cell)) return *v;
    return std::nullopt;
  }

  std::string text(const std::string& name, std::size_t row) const {
    const auto& cell = column(name).cells.at(row);
    if (const auto* s = std::get_if<std::string>(&cell)) return *s;
    return {};
  }

 private:
  std::vector<Column> columns_;
};

/// 12 significant digits, '.' separator. snprintf is locale-dependent in
/// principle, but the programs never leave the "C" locale.
inline std::string format_number(double value, int precision = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, value);
  return buf;
}

inline void write_csv(std::ostream& out, const SweepTable& table, int precision = 12) {
  const auto& cols = table.columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i].header();
  out << '\n';
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) out << ',';
      const auto& cell = cols[i].cells[r];
      if (const auto* v = std::get_if<double>(&cell)) {
        out << format_number(*v, precision);
      } else if (const auto* s = std::get_if<std::string>(&cell)) {
        out << *s;
      }
    }
    out << '\n';
  }
}

}  // namespace squidacc
