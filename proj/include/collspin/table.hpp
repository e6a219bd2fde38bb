#pragma once

// Tabular output shared by every CLI command: CSV with one header row per
// section, or JSON carrying the same rows plus a metadata object.

#include "json.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace collspin {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

struct Document {
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();
  std::vector<Table> tables;
};

// 12 significant digits; "nan", "inf" and "-inf" for non-finite values.
std::string format_number(double x);
std::string format_cell(const Cell& c);

// A single table is written as plain CSV. With several tables each section is
// introduced by a "# name" line and separated by a blank line.
void write_csv(std::ostream& os, const Document& doc);
void write_json(std::ostream& os, const Document& doc);

}  // namespace collspin
