#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace ineqlab {

/// Parameter bundle shared by every inequality. Fields that only some
/// operations use are optional; each operation validates what it needs.
struct Params {
  int N = 3;                    // ambient dimension
  double p = 2.0;               // integrability exponent
  std::optional<int> m;         // lower dimension for the dimension shift
  double R = 1.0;               // ball radius (or family support radius)
  double a = 1.0;               // logarithmic weight shift, a >= 1
  std::optional<double> beta;   // logarithmic weight power; N when unset
  double alpha = 0.0;           // exponential integrability exponent
  std::optional<int> n;         // log-Sobolev dimension
  std::optional<int> ell;       // tensor factor count
  double q = 0.0;               // high exponent for the q-norm bound

  double beta_or_N() const { return beta.value_or(static_cast<double>(N)); }
};

enum class ConstantKind { hardy, sobolev, critical_exponent, critical_hardy, moser_alpha, logsob, lower_dim_coeff };

double constant(ConstantKind kind, const Params& params);

/// ln S_{N,p}; p may be any real in [1, N) and N any real > 1.
double log_sobolev_constant(double N, double p);
/// ln of the coefficient of the lower-dimensional Sobolev inequality.
double log_lower_dim_coeff(double N, double m, double p);
/// Sobolev conjugate Np/(N-p).
double critical_exponent(double N, double p);

std::string_view to_string(ConstantKind kind);
std::optional<ConstantKind> parse_constant_kind(std::string_view name);

}  // namespace ineqlab
