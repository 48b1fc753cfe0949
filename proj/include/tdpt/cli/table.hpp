#ifndef TDPT_CLI_TABLE_HPP
#define TDPT_CLI_TABLE_HPP

// Column tables and their CSV / JSON serialization. Doubles are written as the
// shortest decimal that round-trips, so output is byte-stable.

#include <charconv>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace tdpt::cli {

using Cell = std::variant<double, long long, std::string>;

inline std::string format_number(double v) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, result.ptr};
}

struct Table {
  std::vector<std::pair<std::string, std::string>> meta;  // written as "# key = value"
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_meta(std::string key, std::string value) { meta.emplace_back(std::move(key), std::move(value)); }
  void add_meta(std::string key, double value) { meta.emplace_back(std::move(key), format_number(value)); }
};

inline std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

inline void write_csv(std::ostream& os, const Table& table) {
  for (const auto& [key, value] : table.meta) os << "# " << key << " = " << value << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
}

inline nlohmann::ordered_json to_json(const Table& table) {
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.meta) meta[key] = value;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const auto& c : row) std::visit([&](const auto& v) { r.push_back(v); }, c);
    rows.push_back(std::move(r));
  }
  return {{"meta", meta}, {"columns", table.columns}, {"rows", rows}};
}

inline void write_json(std::ostream& os, const Table& table) { os << to_json(table).dump(1) << '\n'; }

}  // namespace tdpt::cli

#endif  // TDPT_CLI_TABLE_HPP
