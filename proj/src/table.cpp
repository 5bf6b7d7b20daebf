#include "curation/table.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace curation {

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("table row width differs from header");
  rows.push_back(std::move(row));
}

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";  // folds -0
  return fmt::format("{:.10g}", x);
}

namespace {

std::string quote(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (c) out << ',';
    out << quote(cells[c]);
  }
  out << '\n';
}

}  // namespace

void emit_csv(const Table& table, std::ostream& out) {
  write_row(out, table.columns);
  for (const auto& row : table.rows) write_row(out, row);
}

void emit_csv(const Table& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  emit_csv(table, out);
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace curation
