#pragma once

#include <span>
#include <vector>

namespace ineqlab::quad {

// Integrals over s = ln r on a uniform s-grid s_i = s0 + i h.
//
// The body uses the trapezoid rule with fourth-order end corrections
// (weights 17/48, 59/48, 43/48, 49/48 at each end). The part of the line
// below s0 is added analytically from a three-point fit of the model
//
//     g(s) ~ A exp(kappa s) (c - s)^(-b),
//
// where c is the caller's log centre (ln(aR) for logarithmic weights,
// ln R otherwise). Pure powers of r and pure powers of ln(R/r) are both
// reproduced exactly by the model. The model is divergent when kappa < 0, or
// kappa = 0 and b <= 1; the caller chooses whether that throws or reports +inf.
// Above the last node (whole-space domains) an exponential decay in s is fitted.

enum class OnDivergence { throw_error, infinity };

struct TailOptions {
  double log_center = 0.0;
  bool left_tail = true;
  bool right_tail = false;
  OnDivergence on_divergence = OnDivergence::throw_error;
};

struct Integral {
  double value = 0.0;       // body + tails
  double left_tail = 0.0;   // contribution of (-inf, s0)
  double right_tail = 0.0;  // contribution beyond the last node
  bool divergent = false;
};

/// Quadrature weights (already multiplied by h) for n >= 8 nodes.
std::vector<double> weights(std::size_t n, double h);

/// Signed integral of sampled g(s). Tails are fitted on |g| when the fit
/// nodes share a sign, and skipped otherwise.
Integral integrate(std::span<const double> g, double s0, double h, const TailOptions& opt);

/// Integral of exp(y(s)) returned as a logarithm; entries may be -inf (zero).
/// Returns +inf when divergent and on_divergence == infinity.
struct LogIntegral {
  double log_value = 0.0;
  double log_left_tail = 0.0;
  double log_right_tail = 0.0;
  bool divergent = false;
};
LogIntegral log_integrate(std::span<const double> y, double s0, double h, const TailOptions& opt);

/// log of  int_0^inf exp(-kappa x) (1 + x/L0)^(-b) dx ; +inf when divergent.
double log_tail_factor(double kappa, double b, double L0);

double log_sum_exp(std::span<const double> y);

}  // namespace ineqlab::quad
