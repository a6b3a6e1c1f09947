#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ineqlab/grid.hpp"

namespace ineqlab {

enum class TransformKind {
  ball_to_space,  // t = (r^-gamma - R^-gamma)^(-1/gamma), B_R in R^N -> R^N
  dim_shift,      // t = r^((m-p)/(N-p)),                  R^m -> R^N
};

struct TransformSpec {
  TransformKind kind = TransformKind::ball_to_space;
  int N = 3;
  double p = 2.0;
  double R = 1.0;  // ball_to_space only
  int m = 3;       // dim_shift only

  static TransformSpec ball_to_space(int N, double p, double R = 1.0);
  static TransformSpec dim_shift(int m, int N, double p);

  /// (N-p)/(p-1) for ball_to_space, (m-p)/(p-1) for dim_shift.
  double gamma() const;
  /// Exponent (m-p)/(N-p) of the dimension shift.
  double shift_exponent() const;
  int source_dim() const { return kind == TransformKind::dim_shift ? m : N; }
  void validate() const;
};

/// t(r); strictly increasing.
double map_radius(const TransformSpec& spec, double r);
/// r(t), the inverse of map_radius.
double inverse_radius(const TransformSpec& spec, double t);
/// dr/dt in closed form.
double inverse_radius_derivative(const TransformSpec& spec, double t);

/// w(t) = u(r(t)). Default targets: a whole-space grid over
/// [t(r_min), 1e6 R] for ball_to_space and the exactly mapped grid for dim_shift.
RadialFn push_function(const TransformSpec& spec, const RadialFn& u, std::optional<RadialGrid> target = std::nullopt);
/// u(r) = w(t(r)). Default targets: ball(N, R) and the exactly mapped grid.
RadialFn pull_function(const TransformSpec& spec, const RadialFn& w, std::optional<RadialGrid> target = std::nullopt);

struct IdentityPair {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double mismatch = 0.0;  // |lhs - rhs| / max(|lhs|, |rhs|), 0 when both vanish
};

struct IdentityReport {
  std::vector<IdentityPair> pairs;
  std::vector<std::string> notes;
  double max_mismatch() const;
};

/// Both sides of the three identities that accompany the transformation,
/// computed by independent quadratures on the source and the target grids.
IdentityReport verify_identities(const TransformSpec& spec, const RadialFn& u);

/// f(x) = prod_i u(x^i) on R^{n ell} (n = 1, ell in {2, 3}): mass, entropy and
/// Dirichlet energy by explicit tensor quadrature against ell times the 1-D values.
IdentityReport tensor_identity_check(const RadialFn& u, int ell);

double relative_mismatch(double a, double b);

}  // namespace ineqlab
