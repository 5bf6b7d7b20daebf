#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace curation {

/// Column-ordered string table written as CSV.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
};

/// Fixed-precision rendering used in every emitted table ("%.10g").
std::string format_number(double x);

void emit_csv(const Table& table, std::ostream& out);
/// Throws std::runtime_error on I/O failure.
void emit_csv(const Table& table, const std::string& path);

}  // namespace curation
