#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ineqlab/constants.hpp"
#include "ineqlab/grid.hpp"

namespace ineqlab {

enum class InequalityKind {
  hardy,
  sobolev,
  trudinger_moser,
  critical_hardy,
  alvino,
  log_sobolev,
  improved_sobolev,
  improved_hardy,
  lower_dim,
  q_norm_bound,
};

/// Both sides of one inequality. lhs carries the inequality's constant when
/// it has a known one; diagnostics hold the intermediate quantities.
struct InequalityReport {
  std::string kind;
  Params params;
  double lhs = 0.0;
  double rhs = 0.0;
  double deficit = 0.0;  // rhs - lhs
  std::map<std::string, double> diagnostics;
  std::vector<std::string> notes;

  /// deficit >= -rel * max(|lhs|, |rhs|, 1)
  bool holds(double rel = 1e-4) const;
};

/// Evaluate `kind` on u. The ball radius is u's domain radius; params.N must
/// match u's dimension except for lower_dim (u lives in R^m, params.N is the
/// target dimension) and log_sobolev (u lives in R^n).
InequalityReport evaluate(InequalityKind kind, const RadialFn& u, const Params& params);

/// min over nodes of omega^{-1/N} ||grad u||_N (ln(R/r))^{(N-1)/N} - |u(r)|.
double radial_lemma_margin(const RadialFn& u);

/// int |u'|^p dx.
double gradient_energy(const RadialFn& u, double p);
/// int |u|^p |x|^power dx.
double power_integral(const RadialFn& u, double p, double power);
/// (int |u|^q dx)^{1/q} via the log-domain path.
double lq_norm(const RadialFn& u, double q);

std::string_view to_string(InequalityKind kind);
std::optional<InequalityKind> parse_inequality_kind(std::string_view name);

}  // namespace ineqlab
