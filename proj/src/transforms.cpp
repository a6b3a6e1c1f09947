#include "ineqlab/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ineqlab/constants.hpp"
#include "ineqlab/error.hpp"
#include "ineqlab/functionals.hpp"
#include "ineqlab/quadrature.hpp"
#include "ineqlab/specfun.hpp"
#include "kinks.hpp"

namespace ineqlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Beyond this radius the ball-to-space image is dropped (u vanishes there).
constexpr double kMaxImageRadius = 1e12;

double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

// 1 - (r/R)^gamma without cancellation.
double boundary_factor(double r, double R, double gamma) { return -std::expm1(gamma * std::log(r / R)); }

RadialGrid mapped_grid(const TransformSpec& spec, const RadialGrid& g, bool forward) {
  const double k = forward ? spec.shift_exponent() : 1.0 / spec.shift_exponent();
  const int dim = forward ? spec.N : spec.m;
  return RadialGrid(dim, std::exp(k * std::log(g.r_min())), std::exp(k * std::log(g.r_max())), g.size());
}

Domain mapped_domain(const TransformSpec& spec, const Domain& d, bool forward) {
  if (!d.is_ball()) return d;
  const double k = forward ? spec.shift_exponent() : 1.0 / spec.shift_exponent();
  return Domain::ball(std::exp(k * std::log(d.radius)));
}

IdentityPair pair(std::string name, double lhs, double rhs) { return {std::move(name), lhs, rhs, relative_mismatch(lhs, rhs)}; }

// int_{B_R} |u|^p / (|x|^p (1 - (|x|/R)^gamma)^p) dx, with the removable 0/0 at R filled in.
double boundary_hardy_integral(const RadialFn& u, double p, double gamma) {
  const double R = u.domain().radius;
  const std::size_t n = u.size();
  std::vector<double> d(n);
  bool removable = false;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = u.grid()[i];
    const double w = boundary_factor(r, R, gamma);
    if (w <= 0.0) {
      if (u[i] != 0.0) fail(ErrorKind::singularity, "boundary weight is singular where u != 0");
      d[i] = 0.0;
      removable = i == n - 1;
      continue;
    }
    d[i] = std::pow(std::abs(u[i]) / (r * w), p);
  }
  if (removable) fill_last_node(d);
  return integrate_dx(u.grid(), u.domain(), d).value;
}

// log of int |u|^e |x|^{-a} (1 - (|x|/R)^gamma)^{-b} dx; gamma = inf drops the boundary factor.
double log_weighted_power(const RadialFn& u, double e, double a, double b, double gamma) {
  const std::size_t n = u.size();
  std::vector<double> y(n);
  const bool boundary = b != 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] == 0.0) {
      y[i] = -kInf;
      continue;
    }
    y[i] = e * std::log(std::abs(u[i])) - a * u.grid().s(i);
    if (boundary) y[i] -= b * std::log(boundary_factor(u.grid()[i], u.domain().radius, gamma));
  }
  return log_integrate_dx(u.grid(), u.domain(), y).log_value;
}

}  // namespace

TransformSpec TransformSpec::ball_to_space(int N, double p, double R) {
  TransformSpec s;
  s.kind = TransformKind::ball_to_space;
  s.N = N;
  s.p = p;
  s.R = R;
  s.validate();
  return s;
}

TransformSpec TransformSpec::dim_shift(int m, int N, double p) {
  TransformSpec s;
  s.kind = TransformKind::dim_shift;
  s.m = m;
  s.N = N;
  s.p = p;
  s.validate();
  return s;
}

void TransformSpec::validate() const {
  if (kind == TransformKind::ball_to_space) {
    require(N >= 2, "ball_to_space needs N >= 2");
    require(p > 1.0 && p < N, "ball_to_space needs 1 < p < N");
    require(R > 0.0, "ball_to_space needs R > 0");
  } else {
    require(m >= 1 && N >= m, "dim_shift needs 1 <= m <= N");
    require(p > 1.0 && p < m, "dim_shift needs 1 < p < m");
  }
}

double TransformSpec::gamma() const {
  return kind == TransformKind::ball_to_space ? (N - p) / (p - 1.0) : (m - p) / (p - 1.0);
}

double TransformSpec::shift_exponent() const { return (m - p) / (N - p); }

double map_radius(const TransformSpec& spec, double r) {
  require(r > 0.0, "map_radius needs r > 0");
  if (spec.kind == TransformKind::dim_shift) return std::exp(spec.shift_exponent() * std::log(r));
  if (!(r < spec.R)) fail(ErrorKind::domain, "map_radius needs r < R for ball_to_space");
  const double g = spec.gamma();
  return std::exp(std::log(r) - std::log(boundary_factor(r, spec.R, g)) / g);
}

double inverse_radius(const TransformSpec& spec, double t) {
  require(t > 0.0, "inverse_radius needs t > 0");
  if (spec.kind == TransformKind::dim_shift) return std::exp(std::log(t) / spec.shift_exponent());
  const double g = spec.gamma();
  const double lt = std::log(t);
  return std::exp(lt - softplus(g * (lt - std::log(spec.R))) / g);
}

double inverse_radius_derivative(const TransformSpec& spec, double t) {
  const double r = inverse_radius(spec, t);
  const double N = spec.N, p = spec.p;
  if (spec.kind == TransformKind::ball_to_space) return std::pow(r / t, (N - 1.0) / (p - 1.0));
  const double m = spec.m;
  return (N - p) / (m - p) * std::pow(std::pow(r, m - 1.0) / std::pow(t, N - 1.0), 1.0 / (p - 1.0));
}

RadialFn push_function(const TransformSpec& spec, const RadialFn& u, std::optional<RadialGrid> target) {
  spec.validate();
  if (u.dim() != spec.source_dim()) fail(ErrorKind::domain, "push_function: u has the wrong dimension");
  if (spec.kind == TransformKind::ball_to_space) {
    if (!u.domain().is_ball() || std::abs(u.domain().radius - spec.R) > 1e-12 * spec.R)
      fail(ErrorKind::domain, "ball_to_space push needs u on B_R");
    const RadialGrid tg = target.value_or(
        RadialGrid::whole_space(spec.N, u.size(), map_radius(spec, u.grid().r_min()), 1e6 * spec.R));
    const detail::KinkSampler at(u);
    std::vector<double> v(tg.size());
    for (std::size_t i = 0; i < tg.size(); ++i) v[i] = at(inverse_radius(spec, tg[i]));
    return RadialFn(tg, std::move(v), Domain::whole_space());
  }
  if (spec.m == spec.N && !target) return RadialFn(u.grid(), std::vector<double>(u.values().begin(), u.values().end()), u.domain());
  const Domain dom = mapped_domain(spec, u.domain(), true);
  if (!target) {
    RadialGrid tg = mapped_grid(spec, u.grid(), true);
    return RadialFn(tg, std::vector<double>(u.values().begin(), u.values().end()), dom);
  }
  const detail::KinkSampler at(u);
  std::vector<double> v(target->size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = at(inverse_radius(spec, (*target)[i]));
  return RadialFn(*target, std::move(v), dom);
}

RadialFn pull_function(const TransformSpec& spec, const RadialFn& w, std::optional<RadialGrid> target) {
  spec.validate();
  if (w.dim() != spec.N) fail(ErrorKind::domain, "pull_function: w has the wrong dimension");
  if (spec.kind == TransformKind::ball_to_space) {
    if (w.domain().is_ball()) fail(ErrorKind::domain, "ball_to_space pull needs w on the whole space");
    const RadialGrid tg = target.value_or(RadialGrid::ball(spec.N, spec.R, w.size()));
    const detail::KinkSampler at(w);
    std::vector<double> v(tg.size(), 0.0);
    for (std::size_t i = 0; i < tg.size(); ++i) {
      if (!(tg[i] < spec.R)) continue;
      const double t = map_radius(spec, tg[i]);
      if (t > kMaxImageRadius * spec.R) continue;
      v[i] = at(t);
    }
    return RadialFn(tg, std::move(v), Domain::ball(spec.R));
  }
  if (spec.m == spec.N && !target) return RadialFn(w.grid(), std::vector<double>(w.values().begin(), w.values().end()), w.domain());
  const Domain dom = mapped_domain(spec, w.domain(), false);
  if (!target) {
    RadialGrid tg = mapped_grid(spec, w.grid(), false);
    return RadialFn(tg, std::vector<double>(w.values().begin(), w.values().end()), dom);
  }
  std::vector<double> v(target->size());
  const detail::KinkSampler at(w);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = at(map_radius(spec, (*target)[i]));
  return RadialFn(*target, std::move(v), dom);
}

double relative_mismatch(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  if (std::isinf(scale)) return a == b ? 0.0 : kInf;
  return std::abs(a - b) / scale;
}

double IdentityReport::max_mismatch() const {
  double m = 0.0;
  for (const auto& p : pairs) m = std::max(m, p.mismatch);
  return m;
}

IdentityReport verify_identities(const TransformSpec& spec, const RadialFn& u) {
  spec.validate();
  IdentityReport rep;
  const RadialFn w = push_function(spec, u);
  const double N = spec.N, p = spec.p;
  if (spec.kind == TransformKind::ball_to_space) {
    const double g = spec.gamma();
    const double ps = critical_exponent(N, p);
    rep.pairs.push_back(pair("gradient", gradient_energy(w, p), gradient_energy(u, p)));
    rep.pairs.push_back(pair("hardy_potential", power_integral(w, p, -p), boundary_hardy_integral(u, p, g)));
    const double l = u.is_zero() ? 0.0 : std::exp(ps * std::log(lq_norm(w, ps)));
    const double r = u.is_zero() ? 0.0 : std::exp(log_weighted_power(u, ps, 0.0, (N - 1.0) * p / (N - p), g));
    rep.pairs.push_back(pair("critical_norm", l, r));
    return rep;
  }
  const double m = spec.m;
  const double k = spec.shift_exponent();
  const double log_ratio = specfun::log_sphere_area(N) - specfun::log_sphere_area(m);
  const double grad_factor = std::exp(log_ratio + (p - 1.0) * std::log((N - p) / (m - p)));
  rep.pairs.push_back(pair("gradient", gradient_energy(w, p), grad_factor * gradient_energy(u, p)));
  const double E = N * p / (N - p);
  const double l = u.is_zero() ? 0.0 : std::exp(log_weighted_power(w, E, 0.0, 0.0, kInf));
  const double r = u.is_zero() ? 0.0 : std::exp(log_ratio + std::log(k) + log_weighted_power(u, E, (N - m) * p / (N - p), 0.0, kInf));
  rep.pairs.push_back(pair("critical_norm", l, r));
  const double HN = std::pow((N - p) / p, p), Hm = std::pow((m - p) / p, p);
  rep.pairs.push_back(pair("hardy_potential", HN * power_integral(w, p, -p), grad_factor * Hm * power_integral(u, p, -p)));
  return rep;
}

IdentityReport tensor_identity_check(const RadialFn& u, int ell) {
  require(u.dim() == 1, "tensor_identity_check needs a function on R^1");
  require(ell == 2 || ell == 3, "tensor_identity_check supports ell in {2, 3}");
  require(!u.domain().is_ball(), "tensor_identity_check needs a whole-space function");
  IdentityReport rep;
  const std::size_t n = u.size();

  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = u[i] * u[i];
  const double mass = integrate_dx(u.grid(), u.domain(), sq).value;
  require(mass > 0.0, "tensor_identity_check needs a nonzero function");
  const double c = 1.0 / std::sqrt(mass);
  if (std::abs(mass - 1.0) > 1e-12) rep.notes.push_back("input was not normalized; rescaled by " + std::to_string(c));
  const RadialFn v = u.scaled(c);

  // One-dimensional reference values on the input grid.
  std::vector<double> ent(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = v[i] * v[i];
    ent[i] = a == 0.0 ? 0.0 : a * std::log(a);
  }
  const double ent1 = integrate_dx(v.grid(), v.domain(), ent).value;
  const double energy1 = gradient_energy(v, 2.0);

  // Factor grid: every stride-th input node across the numerical support,
  // evenly extended to the line. Reusing input nodes avoids interpolation.
  double vmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) vmax = std::max(vmax, std::abs(v[i]));
  std::size_t last = n - 1;
  while (last > 0 && std::abs(v[last]) <= 1e-20 * vmax) --last;
  const double h = v.grid().step();
  const auto span_nodes = static_cast<std::size_t>(std::ceil(std::log(1e7) / h));
  const std::size_t stride = std::max<std::size_t>(1, span_nodes / 191);
  const std::size_t M = std::min<std::size_t>(192, last / stride + 1);
  require(M >= 8, "tensor_identity_check: support too narrow for the grid");
  const std::size_t first = last - stride * (M - 1);
  const RadialFn dv = radial_derivative(v);
  std::vector<double> cv(M), cd(M), cr(M);
  for (std::size_t i = 0; i < M; ++i) {
    cv[i] = v[first + stride * i];
    cd[i] = dv[first + stride * i];
    cr[i] = v.grid()[first + stride * i];
  }
  auto W = quad::weights(M, h * static_cast<double>(stride));
  for (std::size_t i = 0; i < M; ++i) W[i] *= 2.0 * cr[i];  // two mirror nodes, dr = r ds
  W[0] += 2.0 * cr[0];                                        // constant core [-r0, r0]

  std::vector<double> a(M), la(M), da(M);
  for (std::size_t i = 0; i < M; ++i) {
    a[i] = cv[i] * cv[i];
    la[i] = a[i] == 0.0 ? 0.0 : std::log(a[i]);
    da[i] = cd[i] * cd[i];
  }
  double T_mass = 0.0, T_ent = 0.0, T_grad = 0.0;
  std::vector<std::size_t> idx(static_cast<std::size_t>(ell), 0);
  while (true) {
    double w = 1.0, f2 = 1.0, logf2 = 0.0, grad = 0.0;
    for (int j = 0; j < ell; ++j) {
      w *= W[idx[j]];
      f2 *= a[idx[j]];
      logf2 += la[idx[j]];
    }
    for (int j = 0; j < ell; ++j) {
      double term = da[idx[j]];
      for (int l = 0; l < ell; ++l)
        if (l != j) term *= a[idx[l]];
      grad += term;
    }
    T_mass += w * f2;
    if (f2 > 0.0) T_ent += w * f2 * logf2;
    T_grad += w * grad;
    int j = 0;
    while (j < ell && ++idx[j] == M) idx[j++] = 0;
    if (j == ell) break;
  }
  rep.pairs.push_back(pair("mass", T_mass, 1.0));
  rep.pairs.push_back(pair("entropy", T_ent, ell * ent1));
  rep.pairs.push_back(pair("energy", T_grad, ell * energy1));
  return rep;
}

}  // namespace ineqlab
