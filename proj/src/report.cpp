#include "ineqlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace ineqlab {
namespace {

std::string cell_text(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_number(*d);
  return std::get<std::string>(c);
}

// Numbers go through the 12-digit text form so JSON and CSV agree.
nlohmann::json cell_json(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return format_number(*d);
    return std::stod(format_number(*d));
  }
  return std::get<std::string>(c);
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::string to_csv(const Report& r) {
  std::ostringstream out;
  for (const auto& [k, v] : r.config) out << "# " << k << " = " << v << '\n';
  for (const auto& n : r.notes) out << "# note: " << n << '\n';
  for (std::size_t j = 0; j < r.columns.size(); ++j) out << (j ? "," : "") << r.columns[j];
  out << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << cell_text(row[j]);
    out << '\n';
  }
  return out.str();
}

std::string to_json(const Report& r) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.config) cfg[k] = v;
  j["config"] = cfg;
  j["columns"] = r.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) o[r.columns[c]] = cell_json(row[c]);
    rows.push_back(o);
  }
  j["rows"] = rows;
  nlohmann::ordered_json diag = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.diagnostics) diag[k] = cell_json(v);
  j["diagnostics"] = diag;
  j["notes"] = r.notes;
  return j.dump(2) + "\n";
}

}  // namespace ineqlab
