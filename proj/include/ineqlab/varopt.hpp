#pragma once

#include <string>
#include <vector>

#include "ineqlab/constants.hpp"
#include "ineqlab/grid.hpp"
#include "ineqlab/table.hpp"

namespace ineqlab {

enum class QuotientKind { hardy, sobolev, critical_hardy };

struct QuotientSpec {
  QuotientKind kind = QuotientKind::sobolev;
  Params params;
  RadialGrid grid;
  Domain domain;
};

/// Discrete Rayleigh quotient E(u) / D(u) on node values.
///
/// E is the exact energy of the piecewise-linear interpolant in r,
/// sum_c |B_{r_{c+1}} \ B_{r_c}| |(u_{c+1} - u_c) / (r_{c+1} - r_c)|^p.
/// D is the inequality's constant-free left side by nodal quadrature in
/// ln r, plus the exact contribution of the constant core [0, r_min].
class DiscreteQuotient {
 public:
  explicit DiscreteQuotient(QuotientSpec spec);

  double energy(const std::vector<double>& u) const;
  double denominator(const std::vector<double>& u) const;
  double value(const std::vector<double>& u) const;
  /// Exact gradient of value() with respect to the node values.
  std::vector<double> gradient(const std::vector<double>& u) const;
  /// Best constant when the kind has a known one, else NaN.
  double analytic_constant() const;
  double exponent() const { return p_; }
  const QuotientSpec& spec() const { return spec_; }

 private:
  void denominator_parts(const std::vector<double>& u, double& sum, std::vector<double>* dsum) const;

  QuotientSpec spec_;
  double p_ = 2.0;
  double q_ = 2.0;                 // power inside the denominator sum
  std::vector<double> cell_mass_;  // |B_{r_{c+1}} \ B_{r_c}|
  std::vector<double> cell_dr_;
  std::vector<double> node_w_;     // quadrature weight times the radial weight
  double core_w_ = 0.0;            // constant-core weight on |u_0|^q
};

struct RayleighResult {
  double value = 0.0;
  double initial_value = 0.0;
  std::vector<double> minimizer;
  SweepTable trace;  // iter, quotient, step_size, grad_norm
  std::string status;
  int iterations = 0;
};

/// Preconditioned descent on ln Q: direction from the piecewise-linear
/// stiffness solve, backtracking by halves with an Armijo factor 1e-4,
/// u(r_max) = 0 by projection, D(u) = 1 after every step.
RayleighResult minimize_rayleigh(const QuotientSpec& spec, const RadialFn& init, int max_iters = 5000, double tol = 1e-8);

enum class SequenceKind { hardy, critical_hardy };

/// Quotient of the inequality's two sides along its minimizing family
/// (hardy_seq(eps) or log_power((N-1)/N - eps)), by quadrature.
SweepTable minimizing_sequence_sweep(SequenceKind kind, const Params& params, const std::vector<double>& eps,
                                     std::size_t grid_points = RadialGrid::kDefaultCount);

}  // namespace ineqlab
