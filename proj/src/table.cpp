#include "collspin/table.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace collspin {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << csv_escape(cells[i]);
  }
  os << '\n';
}

// Values go through the 12-digit text form so JSON and CSV carry the same numbers.
nlohmann::ordered_json to_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return format_number(*d);
    return std::stod(format_number(*d));
  }
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  return std::get<std::string>(c);
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("table '" + name + "': row width does not match header");
  rows.push_back(std::move(row));
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";  // folds -0 into 0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

void write_csv(std::ostream& os, const Document& doc) {
  const bool sections = doc.tables.size() > 1;
  for (std::size_t t = 0; t < doc.tables.size(); ++t) {
    const Table& table = doc.tables[t];
    if (sections) {
      if (t) os << '\n';
      os << "# " << table.name << '\n';
    }
    write_row(os, table.columns);
    for (const auto& row : table.rows) {
      std::vector<std::string> cells;
      cells.reserve(row.size());
      for (const Cell& c : row) cells.push_back(format_cell(c));
      write_row(os, cells);
    }
  }
}

void write_json(std::ostream& os, const Document& doc) {
  nlohmann::ordered_json root;
  root["metadata"] = doc.metadata;
  nlohmann::ordered_json tables = nlohmann::ordered_json::object();
  for (const Table& table : doc.tables) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = to_json(row[i]);
      rows.push_back(std::move(obj));
    }
    tables[table.name] = std::move(rows);
  }
  root["tables"] = std::move(tables);
  os << root.dump(2) << '\n';
}

}  // namespace collspin
