#include "ineqlab/constants.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include "ineqlab/error.hpp"
#include "ineqlab/specfun.hpp"

namespace ineqlab {
namespace {

using specfun::log_gamma;

constexpr std::array<std::pair<ConstantKind, std::string_view>, 7> kNames = {{
    {ConstantKind::hardy, "hardy"},
    {ConstantKind::sobolev, "sobolev"},
    {ConstantKind::critical_exponent, "critical_exponent"},
    {ConstantKind::critical_hardy, "critical_hardy"},
    {ConstantKind::moser_alpha, "moser_alpha"},
    {ConstantKind::logsob, "logsob"},
    {ConstantKind::lower_dim_coeff, "lower_dim_coeff"},
}};

void check_subcritical(double N, double p) {
  require(N >= 2.0, "dimension N must be >= 2");
  require(p >= 1.0, "p must be >= 1");
  require(p < N, "subcritical constant needs p < N");
}

}  // namespace

double critical_exponent(double N, double p) {
  check_subcritical(N, p);
  return N * p / (N - p);
}

double log_sobolev_constant(double N, double p) {
  check_subcritical(N, p);
  double v = 0.5 * p * std::log(std::numbers::pi) + std::log(N);
  if (p > 1.0) v += (p - 1.0) * std::log((N - p) / (p - 1.0));
  const double ratio = log_gamma(N / p) + log_gamma(N + 1.0 - N / p) - log_gamma(N) - log_gamma(1.0 + 0.5 * N);
  return v + (p / N) * ratio;
}

double log_lower_dim_coeff(double N, double m, double p) {
  require(m > p && m <= N, "lower_dim_coeff needs p < m <= N");
  return log_sobolev_constant(N, p) + (p / N) * (specfun::log_sphere_area(m) - specfun::log_sphere_area(N)) +
         (p - p / N) * std::log((m - p) / (N - p));
}

double constant(ConstantKind kind, const Params& P) {
  const double N = P.N;
  switch (kind) {
    case ConstantKind::hardy:
      check_subcritical(N, P.p);
      return std::pow((N - P.p) / P.p, P.p);
    case ConstantKind::sobolev:
      return std::exp(log_sobolev_constant(N, P.p));
    case ConstantKind::critical_exponent:
      return critical_exponent(N, P.p);
    case ConstantKind::critical_hardy:
      require(N >= 2.0, "dimension N must be >= 2");
      return std::pow((N - 1.0) / N, N);
    case ConstantKind::moser_alpha:
      require(N >= 2.0, "dimension N must be >= 2");
      return N * std::exp(specfun::log_sphere_area(N) / (N - 1.0));
    case ConstantKind::logsob: {
      require(P.n.has_value(), "logsob constant needs the dimension n");
      require(*P.n >= 1, "logsob dimension n must be >= 1");
      return 2.0 / (std::numbers::pi * std::numbers::e * *P.n);
    }
    case ConstantKind::lower_dim_coeff:
      require(P.m.has_value(), "lower_dim_coeff needs m");
      check_subcritical(N, P.p);
      return std::exp(log_lower_dim_coeff(N, *P.m, P.p));
  }
  fail(ErrorKind::domain, "unknown constant kind");
}

std::string_view to_string(ConstantKind kind) {
  for (const auto& [k, name] : kNames)
    if (k == kind) return name;
  return "?";
}

std::optional<ConstantKind> parse_constant_kind(std::string_view name) {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  return std::nullopt;
}

}  // namespace ineqlab
