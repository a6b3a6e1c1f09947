#include "ineqlab/table.hpp"

#include <algorithm>

#include "ineqlab/error.hpp"

namespace ineqlab {

void SweepTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) fail(ErrorKind::inconsistency, "row width does not match the column count");
  rows.push_back(std::move(row));
}

std::size_t SweepTable::column_index(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) fail(ErrorKind::domain, "no column named " + name);
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> SweepTable::column(const std::string& name) const {
  const std::size_t j = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[j]);
  return out;
}

}  // namespace ineqlab
