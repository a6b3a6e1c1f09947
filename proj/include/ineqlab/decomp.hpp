#pragma once

#include <functional>
#include <vector>

#include "ineqlab/functionals.hpp"
#include "ineqlab/grid.hpp"

namespace ineqlab {

/// N-power partition of unity on log-annuli: phi_k(r) = g(ln(1/r) - k)^{1/N},
/// sum_k phi_k^N = 1 on (0, 1), supp phi_k = [e^{-(k+2)}, e^{-k}].
///
/// g(t) = S(t)^N / (S(t)^N + S(1-t)^N) on [0, 1] and 1 - g(t - 1) on [1, 2],
/// S the quintic smoothstep. The N-th root is then S(t) / D(t)^{1/N}, which
/// vanishes to third order at the support edges for every N.
class Partition {
 public:
  explicit Partition(int N);

  int dim() const noexcept { return N_; }
  double g(double t) const;
  double phi(int k, double r) const;
  /// d phi_k / dr (analytic).
  double dphi(int k, double r) const;
  /// Indices k with phi_k(r) > 0.
  std::vector<int> active(double r) const;
  /// Annulus [e^{-(k+2)}, e^{-k}].
  double inner_radius(int k) const;
  double outer_radius(int k) const;

 private:
  double psi(double x) const;   // S(x) D(x)^{-1/N} on [0, 1]
  double dpsi(double x) const;
  int N_;
};

Partition build_partition(int N);

/// Positive decreasing profile f with derivative, for the admissibility and ODE checks.
struct DecayProfile {
  std::function<double(double)> f;
  std::function<double(double)> df;
  /// Optional ln f, used when set so that far annuli do not underflow.
  std::function<double(double)> log_f = {};
  static DecayProfile exp_decay(double rate = 1.0);
};

/// (f(k+2) (ln(f(k)/f(k+2)))^{-(N-1)/N})^{1/k}.
double admissibility_value(const DecayProfile& f, int N, int k);

/// min over `samples` points of t in [t0, t1] of f'(t) + C f(t).
double ode_margin(const DecayProfile& f, double C, double t0, double t1, int samples = 1001);

/// b_k = k^{N-beta} (k >= 1), 1 (k in {0, -1}), 0 otherwise.
double annulus_weight(int k, int N, double beta);

/// Per-annulus inequality for u_k = u phi_k. Diagnostics carry b_k, the
/// ratio lhs / int |grad u_k|^N and the two power-splitting terms.
InequalityReport annulus_check(const RadialFn& u, const Partition& partition, int k, double a, double beta);

/// Non-sharp critical Hardy inequality: direct lhs and rhs plus the
/// partition-summed bound and the truncated series from the proof.
InequalityReport assemble_critical_hardy(const RadialFn& u, double a, double beta);

/// u phi_k on u's grid.
RadialFn localize(const RadialFn& u, const Partition& partition, int k);

}  // namespace ineqlab
