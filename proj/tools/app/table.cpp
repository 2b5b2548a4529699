#include "table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "json.hpp"

namespace cavityvdw::app {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::logic_error("table row has " + std::to_string(row.size()) + " cells, expected " +
                           std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string cell_text(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_double(*d);
  return csv_field(std::get<std::string>(c));
}

}  // namespace

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? "," : "") << csv_field(table.columns[i]);
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
}

void write_jsonl(std::ostream& out, const Table& table) {
  for (const auto& row : table.rows) {
    out << '{';
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << nlohmann::json(table.columns[i]).dump() << ':';
      if (const double* d = std::get_if<double>(&row[i])) {
        // JSON has no non-finite numbers; those become null.
        out << (std::isfinite(*d) ? format_double(*d) : "null");
      } else {
        out << nlohmann::json(std::get<std::string>(row[i])).dump();
      }
    }
    out << "}\n";
  }
}

void write_table(std::ostream& out, const Table& table, Format format) {
  if (table.rows.empty()) throw OutputError("refusing to export an empty table");
  if (format == Format::csv) {
    write_csv(out, table);
  } else {
    write_jsonl(out, table);
  }
}

void export_table(const Table& table, const std::string& path, Format format) {
  if (table.rows.empty()) throw OutputError("refusing to export an empty table");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot open '" + path + "' for writing");
  write_table(out, table, format);
  out.flush();
  if (!out) throw OutputError("failed writing '" + path + "'");
}

}  // namespace cavityvdw::app
