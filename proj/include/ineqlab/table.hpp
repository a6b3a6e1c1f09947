#pragma once

#include <map>
#include <string>
#include <vector>

namespace ineqlab {

/// Ordered rows of (parameter value, quantities...). columns[0] names the
/// parameter; +inf marks an overflowed quantity.
struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::map<std::string, std::string> metadata;

  SweepTable() = default;
  explicit SweepTable(std::vector<std::string> cols) : columns(std::move(cols)) {}

  const std::string& parameter() const { return columns.front(); }
  void add_row(std::vector<double> row);
  std::size_t size() const { return rows.size(); }
  /// Index of a named column; throws a domain error if absent.
  std::size_t column_index(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;
};

}  // namespace ineqlab
