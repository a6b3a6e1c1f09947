#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "ineqlab/quadrature.hpp"

namespace ineqlab {

/// Log-uniform radial grid: nodes r_i = exp(s0 + i h), i = 0..count-1,
/// with r_0 = r_min and r_{count-1} = r_max exactly.
class RadialGrid {
 public:
  static constexpr std::size_t kDefaultCount = 4096;

  RadialGrid(int dim, double r_min, double r_max, std::size_t count = kDefaultCount);

  /// Grid over B_R with r_min = 1e-8 R.
  static RadialGrid ball(int dim, double R, std::size_t count = kDefaultCount, double r_min_rel = 1e-8);
  /// Grid over R^N truncated to [r_min, r_max].
  static RadialGrid whole_space(int dim, std::size_t count = kDefaultCount, double r_min = 1e-8, double r_max = 1e6);

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  double r_min() const noexcept { return nodes_.front(); }
  double r_max() const noexcept { return nodes_.back(); }
  double s0() const noexcept { return s0_; }
  double step() const noexcept { return h_; }
  double s(std::size_t i) const noexcept { return s0_ + static_cast<double>(i) * h_; }
  double operator[](std::size_t i) const noexcept { return nodes_[i]; }
  std::span<const double> nodes() const noexcept { return nodes_; }
  /// Same extent and dimension, count -> 2 count - 1 (every old node is kept).
  RadialGrid refined() const;

 private:
  int dim_;
  double s0_;
  double h_;
  std::vector<double> nodes_;
};

struct Domain {
  enum class Kind { ball, whole_space };
  Kind kind = Kind::whole_space;
  double radius = 0.0;  // ball radius R; unused for whole_space

  static Domain ball(double R) { return {Kind::ball, R}; }
  static Domain whole_space() { return {Kind::whole_space, 0.0}; }
  bool is_ball() const noexcept { return kind == Kind::ball; }
};

/// Radial function sampled on a RadialGrid. Ball functions are extended by 0
/// beyond R; below r_min every function is taken as constant (= value at r_min).
class RadialFn {
 public:
  static constexpr double kTailThreshold = 1e-3;

  RadialFn(RadialGrid grid, std::vector<double> values, Domain domain);

  const RadialGrid& grid() const noexcept { return grid_; }
  const Domain& domain() const noexcept { return domain_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }
  int dim() const noexcept { return grid_.dim(); }

  /// Monotone cubic (Fritsch-Carlson) interpolation in ln r.
  double at(double r) const;
  /// Measure of the domain: |B_R| or +inf.
  double measure() const;
  bool is_zero() const;

  RadialFn scaled(double c) const;

 private:
  RadialGrid grid_;
  std::vector<double> values_;
  Domain domain_;
};

struct LogWeight {
  double a = 1.0;
  double beta = 0.0;
  double r_ref = 1.0;
};

/// omega_{N-1} int f(r) r^{N-1+power} (ln(a r_ref / r))^{-beta} dr.
double weighted_integral(const RadialFn& f, double power, std::optional<LogWeight> log_weight = std::nullopt);

/// df/dr as the ratio of fourth-order s-derivatives of f and of r
/// (exact for affine f, one-sided stencils at the ends).
RadialFn radial_derivative(const RadialFn& f);

/// (omega_{N-1} int |f|^q r^{N-1} dr)^{1/q}, computed in log domain.
double high_exponent_norm(const RadialFn& f, double q);

// Lower-level helpers shared by the other modules.

/// int_{R^N} density dx for a sampled radial density (tails included).
/// log_center is c in the tail model, ln R by default for balls and 0 otherwise.
quad::Integral integrate_dx(const RadialGrid& grid, const Domain& domain, std::span<const double> density,
                            std::optional<double> log_center = std::nullopt,
                            quad::OnDivergence on_div = quad::OnDivergence::throw_error,
                            bool left_tail = true);

/// log int exp(log_density) dx.
quad::LogIntegral log_integrate_dx(const RadialGrid& grid, const Domain& domain, std::span<const double> log_density,
                                   std::optional<double> log_center = std::nullopt,
                                   quad::OnDivergence on_div = quad::OnDivergence::throw_error,
                                   bool left_tail = true);

/// log of the integral over the core B_{r0} in R^N of exp(log_density(L)),
/// L = ln(R/|x|) >= ln(R/r0). For densities the s-tail model cannot follow;
/// log_density must be nonincreasing in L.
double log_core_integral(int dim, double r0, double R, const std::function<double(double)>& log_density);

/// Replace a removable 0/0 value at the last node by cubic extrapolation in s.
void fill_last_node(std::vector<double>& values);

/// Monotone piecewise-cubic (Fritsch-Carlson) interpolant on increasing x.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y);
  double operator()(double x) const;
  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }

 private:
  std::vector<double> x_, y_, m_;
};

/// Two-column (r, value) text, '#' comments; resampled onto grid in ln r.
/// Ball inputs get f(R) = 0 enforced.
RadialFn read_sampled_function(std::istream& in, const RadialGrid& grid, const Domain& domain);

}  // namespace ineqlab
