#include "ineqlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "ineqlab/error.hpp"
#include "ineqlab/specfun.hpp"

namespace ineqlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int sign(double v) { return (v > 0) - (v < 0); }

// Fritsch-Carlson slope at node k of a piecewise cubic through (x, y).
template <class X, class Y>
double pchip_slope(const X& x, const Y& y, std::size_t n, std::size_t k) {
  if (n == 2) return (y(1) - y(0)) / (x(1) - x(0));
  auto delta = [&](std::size_t j) { return (y(j + 1) - y(j)) / (x(j + 1) - x(j)); };
  auto hh = [&](std::size_t j) { return x(j + 1) - x(j); };
  if (k == 0 || k == n - 1) {
    const bool left = k == 0;
    const std::size_t j0 = left ? 0 : n - 2;
    const std::size_t j1 = left ? 1 : n - 3;
    const double h0 = hh(j0), h1 = hh(j1);
    const double d0 = delta(j0), d1 = delta(j1);
    double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (sign(d) != sign(d0)) d = 0.0;
    else if (sign(d0) != sign(d1) && std::abs(d) > 3.0 * std::abs(d0)) d = 3.0 * d0;
    return d;
  }
  const double d0 = delta(k - 1), d1 = delta(k);
  if (d0 * d1 <= 0.0) return 0.0;
  const double h0 = hh(k - 1), h1 = hh(k);
  const double w1 = 2.0 * h1 + h0, w2 = h1 + 2.0 * h0;
  return (w1 + w2) / (w1 / d0 + w2 / d1);
}

double hermite(double x0, double x1, double y0, double y1, double m0, double m1, double x) {
  const double h = x1 - x0;
  const double t = (x - x0) / h;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * m0 + (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * m1;
}

// Fourth-order first derivative in the uniform index variable (unit spacing).
double d_index(std::span<const double> f, std::size_t i) {
  const std::size_t n = f.size();
  if (i >= 2 && i + 2 < n) return (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / 12.0;
  if (i == 0) return (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / 12.0;
  if (i == 1) return (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / 12.0;
  if (i == n - 1)
    return (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]) / 12.0;
  return (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) / 12.0;
}

}  // namespace

RadialGrid::RadialGrid(int dim, double r_min, double r_max, std::size_t count) : dim_(dim) {
  if (dim < 1) fail(ErrorKind::domain, "grid dimension must be >= 1");
  if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max))
    fail(ErrorKind::domain, "grid needs 0 < r_min < r_max < inf");
  if (count < 16) fail(ErrorKind::domain, "grid needs at least 16 nodes");
  s0_ = std::log(r_min);
  h_ = (std::log(r_max) - s0_) / static_cast<double>(count - 1);
  nodes_.resize(count);
  for (std::size_t i = 0; i < count; ++i) nodes_[i] = std::exp(s0_ + static_cast<double>(i) * h_);
  nodes_.front() = r_min;
  nodes_.back() = r_max;
}

RadialGrid RadialGrid::ball(int dim, double R, std::size_t count, double r_min_rel) {
  return RadialGrid(dim, r_min_rel * R, R, count);
}

RadialGrid RadialGrid::whole_space(int dim, std::size_t count, double r_min, double r_max) {
  return RadialGrid(dim, r_min, r_max, count);
}

RadialGrid RadialGrid::refined() const { return RadialGrid(dim_, r_min(), r_max(), 2 * size() - 1); }

RadialFn::RadialFn(RadialGrid grid, std::vector<double> values, Domain domain)
    : grid_(std::move(grid)), values_(std::move(values)), domain_(domain) {
  if (values_.size() != grid_.size()) fail(ErrorKind::domain, "value count does not match grid");
  for (double v : values_)
    if (!std::isfinite(v)) fail(ErrorKind::domain, "radial function values must be finite");
  if (domain_.is_ball()) {
    if (!(domain_.radius > 0.0) || std::abs(grid_.r_max() - domain_.radius) > 1e-12 * domain_.radius)
      fail(ErrorKind::domain, "ball functions need a grid ending at R");
  } else {
    double vmax = 0.0;
    for (double v : values_) vmax = std::max(vmax, std::abs(v));
    if (vmax > 0.0 && std::abs(values_.back()) > kTailThreshold * vmax)
      fail(ErrorKind::domain, "whole-space function has not decayed at r_max");
  }
}

double RadialFn::at(double r) const {
  const std::size_t n = size();
  if (r <= grid_.r_min()) return values_.front();
  if (r >= grid_.r_max()) return r == grid_.r_max() ? values_.back() : 0.0;
  const double pos = (std::log(r) - grid_.s0()) / grid_.step();
  std::size_t k = static_cast<std::size_t>(std::floor(pos));
  k = std::min(k, n - 2);
  auto xs = [&](std::size_t j) { return grid_.s(j); };
  auto ys = [&](std::size_t j) { return values_[j]; };
  const double m0 = pchip_slope(xs, ys, n, k);
  const double m1 = pchip_slope(xs, ys, n, k + 1);
  return hermite(grid_.s(k), grid_.s(k + 1), values_[k], values_[k + 1], m0, m1, std::log(r));
}

double RadialFn::measure() const {
  if (!domain_.is_ball()) return kInf;
  const double N = grid_.dim();
  return std::exp(specfun::log_sphere_area(N) + N * std::log(domain_.radius)) / N;
}

bool RadialFn::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

RadialFn RadialFn::scaled(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return RadialFn(grid_, std::move(v), domain_);
}

quad::Integral integrate_dx(const RadialGrid& grid, const Domain& domain, std::span<const double> density,
                            std::optional<double> log_center, quad::OnDivergence on_div, bool left_tail) {
  const std::size_t n = grid.size();
  const double N = grid.dim();
  const double omega = std::exp(specfun::log_sphere_area(N));
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = density[i] == 0.0 ? 0.0 : omega * density[i] * std::pow(grid[i], N);
  quad::TailOptions opt;
  opt.log_center = log_center.value_or(domain.is_ball() ? std::log(domain.radius) : 0.0);
  opt.right_tail = !domain.is_ball();
  opt.on_divergence = on_div;
  opt.left_tail = left_tail;
  return quad::integrate(g, grid.s0(), grid.step(), opt);
}

quad::LogIntegral log_integrate_dx(const RadialGrid& grid, const Domain& domain, std::span<const double> log_density,
                                   std::optional<double> log_center, quad::OnDivergence on_div, bool left_tail) {
  const std::size_t n = grid.size();
  const double N = grid.dim();
  const double log_omega = specfun::log_sphere_area(N);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i)
    y[i] = log_density[i] == -kInf ? -kInf : log_density[i] + N * grid.s(i) + log_omega;
  quad::TailOptions opt;
  opt.log_center = log_center.value_or(domain.is_ball() ? std::log(domain.radius) : 0.0);
  opt.right_tail = !domain.is_ball();
  opt.on_divergence = on_div;
  opt.left_tail = left_tail;
  return quad::log_integrate(y, grid.s0(), grid.step(), opt);
}

double log_core_integral(int dim, double r0, double R, const std::function<double(double)>& log_density) {
  require(r0 > 0.0 && r0 < R, "core radius must lie in (0, R)");
  const double N = dim;
  const double L0 = std::log(R / r0);
  // dx = omega R^N e^{-N L} dL; the integrand is scaled by its value at L0.
  auto G = [&](double L) { return log_density(L) - N * L; };
  const double g0 = G(L0);
  if (g0 == -kInf) return -kInf;
  if (!std::isfinite(g0)) fail(ErrorKind::numerical, "core density is not finite at r_min");
  boost::math::quadrature::exp_sinh<double> integrator;
  const double I = integrator.integrate([&](double y) {
    const double v = G(L0 + y) - g0;
    return v < -745.0 ? 0.0 : std::exp(v);
  });
  return std::log(I) + g0 + specfun::log_sphere_area(N) + N * std::log(R);
}

void fill_last_node(std::vector<double>& v) {
  const std::size_t n = v.size();
  v[n - 1] = 4.0 * v[n - 2] - 6.0 * v[n - 3] + 4.0 * v[n - 4] - v[n - 5];
}

double weighted_integral(const RadialFn& f, double power, std::optional<LogWeight> lw) {
  const auto& grid = f.grid();
  const std::size_t n = grid.size();
  std::vector<double> density(n, 0.0);
  bool removable_last = false;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = grid[i];
    double w = std::pow(r, power);
    if (lw) {
      const double L = std::log(lw->a * lw->r_ref / r);
      if (L <= 0.0) {
        if (f[i] == 0.0) {
          if (i == n - 1 && L == 0.0) removable_last = true;
          density[i] = 0.0;
          continue;
        }
        fail(ErrorKind::singularity, "logarithmic weight is singular where f != 0 (r = " + std::to_string(r) + ")");
      }
      w *= std::pow(L, -lw->beta);
    }
    density[i] = f[i] * w;
  }
  if (removable_last) fill_last_node(density);
  std::optional<double> center;
  if (lw) center = std::log(lw->a * lw->r_ref);
  return integrate_dx(grid, f.domain(), density, center).value;
}

RadialFn radial_derivative(const RadialFn& f) {
  const auto& grid = f.grid();
  const std::size_t n = grid.size();
  if (n < 5) fail(ErrorKind::domain, "radial_derivative needs at least 5 nodes");
  const auto r = grid.nodes();
  const auto v = f.values();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = d_index(v, i) / d_index(r, i);
  // Derivatives of decaying whole-space functions decay at least as fast;
  // build through a ball-free domain check only when the profile is a ball.
  if (f.domain().is_ball()) return RadialFn(grid, std::move(d), f.domain());
  double vmax = 0.0;
  for (double x : d) vmax = std::max(vmax, std::abs(x));
  if (vmax > 0.0 && std::abs(d.back()) > RadialFn::kTailThreshold * vmax) d.back() = 0.0;
  return RadialFn(grid, std::move(d), f.domain());
}

double high_exponent_norm(const RadialFn& f, double q) {
  if (!(q >= 1.0)) fail(ErrorKind::domain, "high_exponent_norm needs q >= 1");
  if (f.is_zero()) return 0.0;
  const std::size_t n = f.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = f[i] == 0.0 ? -kInf : q * std::log(std::abs(f[i]));
  const auto li = log_integrate_dx(f.grid(), f.domain(), y);
  return std::exp(li.log_value / q);
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) fail(ErrorKind::domain, "interpolation needs at least 2 matching samples");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1])) fail(ErrorKind::domain, "interpolation abscissae must be strictly increasing");
  m_.resize(n);
  auto xs = [&](std::size_t j) { return x_[j]; };
  auto ys = [&](std::size_t j) { return y_[j]; };
  for (std::size_t k = 0; k < n; ++k) m_[k] = pchip_slope(xs, ys, n, k);
}

double MonotoneCubic::operator()(double x) const {
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const std::size_t k = static_cast<std::size_t>(it - x_.begin()) - 1;
  return hermite(x_[k], x_[k + 1], y_[k], y_[k + 1], m_[k], m_[k + 1], x);
}

RadialFn read_sampled_function(std::istream& in, const RadialGrid& grid, const Domain& domain) {
  std::vector<double> xs, ys;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double r, v;
    if (!(ls >> r)) continue;
    if (!(ls >> v)) fail(ErrorKind::io, "sampled function: missing value on line " + std::to_string(lineno));
    if (!(r > 0.0) || !std::isfinite(v)) fail(ErrorKind::io, "sampled function: bad sample on line " + std::to_string(lineno));
    if (!xs.empty() && std::log(r) <= xs.back())
      fail(ErrorKind::io, "sampled function: radii must be strictly increasing (line " + std::to_string(lineno) + ")");
    xs.push_back(std::log(r));
    ys.push_back(v);
  }
  if (xs.size() < 2) fail(ErrorKind::io, "sampled function: need at least two samples");
  const MonotoneCubic interp(xs, ys);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double s = grid.s(i);
    values[i] = s > interp.x_back() ? 0.0 : interp(s);
  }
  if (domain.is_ball()) values.back() = 0.0;
  return RadialFn(grid, std::move(values), domain);
}

}  // namespace ineqlab
