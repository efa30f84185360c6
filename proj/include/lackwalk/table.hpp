#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace lackwalk {

/// One table cell; monostate renders as an empty CSV field / JSON null.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
      throw std::invalid_argument("row width does not match table header");
    rows.push_back(std::move(row));
  }

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name)
        return i;
    throw std::out_of_range("table has no column '" + name + "'");
  }
};

enum class TableFormat { csv, json };

inline TableFormat parse_table_format(const std::string& s) {
  if (s == "csv")
    return TableFormat::csv;
  if (s == "json")
    return TableFormat::json;
  throw std::invalid_argument("unknown table format '" + s + "' (expected csv or json)");
}

/// 17 significant digits: enough to round-trip any double.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string format_cell(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

inline void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_cell(row[i]);
    out << '\n';
  }
}

inline nlohmann::ordered_json to_json(const Table& table) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& name = table.columns[i];
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>)
              obj[name] = nullptr;
            else
              obj[name] = v;
          },
          row[i]);
    }
    arr.push_back(std::move(obj));
  }
  return arr;
}

inline void write_table(const Table& table, TableFormat format, std::ostream& out) {
  if (format == TableFormat::csv)
    write_csv(table, out);
  else
    out << to_json(table).dump(2) << '\n';
}

inline void emit_table(const Table& table, TableFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw std::runtime_error("cannot open '" + path + "' for writing");
  write_table(table, format, out);
  out.flush();
  if (!out)
    throw std::runtime_error("failed writing '" + path + "'");
}

/// Reads a CSV written by write_csv. Numeric-looking fields become int64 or
/// double, empty fields monostate, anything else a string.
inline Table read_csv(std::istream& in) {
  Table table;
  std::string line;
  const auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(s);
    while (std::getline(ss, field, ','))
      out.push_back(field);
    if (!s.empty() && s.back() == ',')
      out.emplace_back();
    return out;
  };
  if (!std::getline(in, line))
    throw std::runtime_error("CSV input is empty");
  table.columns = split(line);
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    const auto fields = split(line);
    std::vector<Cell> row;
    for (const auto& f : fields) {
      if (f.empty()) {
        row.emplace_back(std::monostate{});
        continue;
      }
      std::size_t pos = 0;
      try {
        const long long iv = std::stoll(f, &pos);
        if (pos == f.size()) {
          row.emplace_back(static_cast<std::int64_t>(iv));
          continue;
        }
        const double dv = std::stod(f, &pos);
        if (pos == f.size()) {
          row.emplace_back(dv);
          continue;
        }
      } catch (const std::exception&) {
      }
      row.emplace_back(f);
    }
    row.resize(table.columns.size());
    table.rows.push_back(std::move(row));
  }
  return table;
}

inline Table read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open '" + path + "'");
  return read_csv(in);
}

inline double cell_as_double(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell))
    return *d;
  if (const auto* i = std::get_if<std::int64_t>(&cell))
    return static_cast<double>(*i);
  throw std::invalid_argument("table cell is not numeric");
}

inline bool cell_is_empty(const Cell& cell) { return std::holds_alternative<std::monostate>(cell); }

}  // namespace lackwalk
