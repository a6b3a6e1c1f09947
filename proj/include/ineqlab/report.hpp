#pragma once

#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ineqlab {

using Cell = std::variant<double, std::string>;

/// Tabular run output. CSV starts with "# key = value" lines holding the
/// resolved config, then one header line and the rows; numbers use 12
/// significant digits so identical configs give identical bytes.
struct Report {
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::map<std::string, double> diagnostics;
  std::vector<std::string> notes;
};

std::string format_number(double x);
std::string to_csv(const Report& report);
std::string to_json(const Report& report);

}  // namespace ineqlab
