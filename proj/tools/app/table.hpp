#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "config.hpp"

namespace cavityvdw::app {

/// Output that could not be written; exit code 3.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

/// 17 significant digits, '.' decimal separator; "nan", "inf" and "-inf" for
/// non-finite values.
std::string format_double(double v);

void write_csv(std::ostream& out, const Table& table);
void write_jsonl(std::ostream& out, const Table& table);
void write_table(std::ostream& out, const Table& table, Format format);

/// Write the table to `path`. Throws OutputError for an empty table or an
/// unwritable path.
void export_table(const Table& table, const std::string& path, Format format);

}  // namespace cavityvdw::app
