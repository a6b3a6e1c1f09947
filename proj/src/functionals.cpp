#include "ineqlab/functionals.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <vector>
#include <utility>

#include "ineqlab/error.hpp"
#include "ineqlab/specfun.hpp"
#include "kinks.hpp"

namespace ineqlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr std::array<std::pair<InequalityKind, std::string_view>, 10> kNames = {{
    {InequalityKind::hardy, "hardy"},
    {InequalityKind::sobolev, "sobolev"},
    {InequalityKind::trudinger_moser, "trudinger_moser"},
    {InequalityKind::critical_hardy, "critical_hardy"},
    {InequalityKind::alvino, "alvino"},
    {InequalityKind::log_sobolev, "log_sobolev"},
    {InequalityKind::improved_sobolev, "improved_sobolev"},
    {InequalityKind::improved_hardy, "improved_hardy"},
    {InequalityKind::lower_dim, "lower_dim"},
    {InequalityKind::q_norm_bound, "q_norm_bound"},
}};

double log_abs(double v) { return v == 0.0 ? -kInf : std::log(std::abs(v)); }

void need_ball(const RadialFn& u, InequalityKind kind) {
  if (!u.domain().is_ball())
    fail(ErrorKind::domain, std::string(to_string(kind)) + " is posed on a ball; got a whole-space function");
}

void need_dim(const RadialFn& u, const Params& P) {
  if (u.dim() != P.N)
    fail(ErrorKind::domain, "params.N = " + std::to_string(P.N) + " does not match the grid dimension " +
                                std::to_string(u.dim()));
}

// 1 - (r/R)^gamma, exact to rounding near both ends.
double boundary_factor(double r, double R, double gamma) { return -std::expm1(gamma * std::log(r / R)); }

double log_omega(double N) { return specfun::log_sphere_area(N); }

// First derivative at node w + k from the five nodes w..w+4 (unit spacing).
double d_window(std::span<const double> f, std::size_t w, std::size_t k) {
  static constexpr double c[5][5] = {{-25, 48, -36, 16, -3},
                                     {-3, -10, 18, -6, 1},
                                     {1, -8, 0, 8, -1},
                                     {-1, 6, -18, 10, 3},
                                     {3, -16, 36, -48, 25}};
  double s = 0.0;
  for (std::size_t j = 0; j < 5; ++j) s += c[k][j] * f[w + j];
  return s / 12.0;
}

// Most centred five-node window around node i that does not straddle a kink cell.
std::size_t stencil_start(std::size_t i, std::size_t n, const std::vector<std::size_t>& kinks) {
  const std::size_t lo = i >= 4 ? i - 4 : 0;
  const std::size_t hi = std::min(i, n - 5);
  auto ok = [&](std::size_t w) {
    for (std::size_t c : kinks)
      if (w <= c && c + 1 <= w + 4) return false;
    return true;
  };
  const std::size_t centre = std::clamp(i >= 2 ? i - 2 : std::size_t{0}, lo, hi);
  for (std::size_t off = 0; off <= 4; ++off) {
    if (centre >= lo + off && ok(centre - off)) return centre - off;
    if (centre + off <= hi && ok(centre + off)) return centre + off;
  }
  return centre;
}

InequalityReport make(InequalityKind kind, const Params& P, double lhs, double rhs) {
  InequalityReport rep;
  rep.kind = std::string(to_string(kind));
  rep.params = P;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.deficit = rhs - lhs;
  return rep;
}

InequalityReport eval_hardy(const RadialFn& u, const Params& P) {
  need_dim(u, P);
  const double H = constant(ConstantKind::hardy, P);
  const double raw = power_integral(u, P.p, -P.p);
  auto rep = make(InequalityKind::hardy, P, H * raw, gradient_energy(u, P.p));
  rep.diagnostics["constant"] = H;
  rep.diagnostics["raw_lhs"] = raw;
  return rep;
}

InequalityReport eval_sobolev(const RadialFn& u, const Params& P) {
  need_dim(u, P);
  const double S = constant(ConstantKind::sobolev, P);
  const double ps = critical_exponent(P.N, P.p);
  const double norm = lq_norm(u, ps);
  auto rep = make(InequalityKind::sobolev, P, S * std::pow(norm, P.p), gradient_energy(u, P.p));
  rep.diagnostics["constant"] = S;
  rep.diagnostics["critical_exponent"] = ps;
  rep.diagnostics["lpstar_norm"] = norm;
  return rep;
}

InequalityReport eval_trudinger_moser(const RadialFn& u, const Params& P) {
  need_ball(u, InequalityKind::trudinger_moser);
  need_dim(u, P);
  require(P.alpha > 0.0, "trudinger_moser needs alpha > 0");
  const double N = P.N;
  const double g = std::pow(gradient_energy(u, N), 1.0 / N);
  require(g > 0.0, "trudinger_moser needs ||grad u||_N > 0");
  std::vector<double> y(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) y[i] = P.alpha * std::pow(std::abs(u[i]) / g, N / (N - 1.0));
  const auto li = log_integrate_dx(u.grid(), u.domain(), y);
  const double lhs = std::exp(li.log_value);
  const double measure = u.measure();
  auto rep = make(InequalityKind::trudinger_moser, P, lhs, lhs);
  rep.diagnostics["C"] = lhs / measure;
  rep.diagnostics["log_lhs"] = li.log_value;
  rep.diagnostics["grad_norm"] = g;
  rep.diagnostics["measure"] = measure;
  rep.diagnostics["alpha_over_moser_alpha"] = P.alpha / constant(ConstantKind::moser_alpha, P);
  rep.notes.push_back("best constant C unknown; rhs is C |Omega| with C = lhs / |Omega|");
  return rep;
}

InequalityReport eval_critical_hardy(const RadialFn& u, const Params& P) {
  need_ball(u, InequalityKind::critical_hardy);
  need_dim(u, P);
  require(P.a >= 1.0, "critical_hardy needs a >= 1");
  const double N = P.N;
  const double beta = P.beta_or_N();
  const double R = u.domain().radius;
  std::vector<double> abs_pow(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) abs_pow[i] = std::pow(std::abs(u[i]), N);
  RadialFn up(u.grid(), std::move(abs_pow), u.domain());
  const double raw = weighted_integral(up, -N, LogWeight{P.a, beta, R});
  const bool sharp = P.a == 1.0 && beta == N;
  const double C = sharp ? constant(ConstantKind::critical_hardy, P) : 1.0;
  auto rep = make(InequalityKind::critical_hardy, P, C * raw, gradient_energy(u, N));
  rep.diagnostics["raw_lhs"] = raw;
  rep.diagnostics["beta"] = beta;
  if (sharp) rep.diagnostics["constant"] = C;
  else rep.notes.push_back("constant C_{beta,a} unknown; lhs is the raw weighted integral");
  if (P.a == 1.0 && beta != N) {
    rep.diagnostics["outside_hypothesis"] = 1.0;
    rep.notes.push_back("a = 1 with beta != N lies outside the a > 1 hypothesis of the non-sharp inequality");
  }
  return rep;
}

InequalityReport eval_alvino(const RadialFn& u, const Params& P) {
  need_ball(u, InequalityKind::alvino);
  need_dim(u, P);
  const double N = P.N;
  const double R = u.domain().radius;
  double sup = 0.0, where = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double L = std::log(R / u.grid()[i]);
    if (L < 1e-12) continue;
    const double ratio = std::abs(u[i]) / std::pow(L, (N - 1.0) / N);
    if (ratio > sup) {
      sup = ratio;
      where = u.grid()[i];
    }
  }
  const double omega = std::exp(log_omega(N));
  auto rep = make(InequalityKind::alvino, P, omega * std::pow(sup, N), gradient_energy(u, N));
  rep.diagnostics["constant"] = omega;
  rep.diagnostics["sup"] = sup;
  rep.diagnostics["sup_r"] = where;
  return rep;
}

InequalityReport eval_log_sobolev(const RadialFn& u, const Params& P) {
  const int n = u.dim();
  if (P.n && *P.n != n)
    fail(ErrorKind::domain, "params.n = " + std::to_string(*P.n) + " does not match the grid dimension");
  const std::size_t sz = u.size();
  std::vector<double> sq(sz);
  for (std::size_t i = 0; i < sz; ++i) sq[i] = u[i] * u[i];
  const double mass = integrate_dx(u.grid(), u.domain(), sq).value;
  require(mass > 0.0, "log_sobolev needs a nonzero function");
  const double scale = 1.0 / std::sqrt(mass);
  std::vector<double> ent(sz);
  for (std::size_t i = 0; i < sz; ++i) {
    const double v2 = sq[i] * scale * scale;
    ent[i] = v2 == 0.0 ? 0.0 : v2 * std::log(v2);
  }
  const double lhs = integrate_dx(u.grid(), u.domain(), ent).value;
  const double energy = gradient_energy(u, 2.0) * scale * scale;
  Params Pn = P;
  Pn.n = n;
  const double c = constant(ConstantKind::logsob, Pn);
  const double rhs = 0.5 * n * std::log(c * energy);
  auto rep = make(InequalityKind::log_sobolev, Pn, lhs, rhs);
  rep.diagnostics["constant"] = c;
  rep.diagnostics["scale"] = scale;
  rep.diagnostics["energy"] = energy;
  return rep;
}

double gamma_exp(const Params& P) {
  require(P.p >= 1.0 && P.p < P.N, "improved inequalities need 1 <= p < N");
  return P.p == 1.0 ? kInf : (P.N - P.p) / (P.p - 1.0);
}

InequalityReport eval_improved_sobolev(const RadialFn& u, const Params& P) {
  need_ball(u, InequalityKind::improved_sobolev);
  need_dim(u, P);
  const double N = P.N, p = P.p;
  const double gamma = gamma_exp(P);
  const double ps = critical_exponent(N, p);
  const double e = (N - 1.0) * p / (N - p);
  const double R = u.domain().radius;
  std::vector<double> y(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double lu = log_abs(u[i]);
    y[i] = lu == -kInf ? -kInf : ps * lu - e * std::log(boundary_factor(u.grid()[i], R, gamma));
  }
  // The weight grows like (gamma ln(R/r))^{-e} below r_min, which the s-tail
  // model cannot follow for small gamma; the constant core is integrated exactly.
  const auto body = log_integrate_dx(u.grid(), u.domain(), y, std::nullopt, quad::OnDivergence::throw_error, false);
  const double lu0 = log_abs(u[0]);
  const double core = lu0 == -kInf ? -kInf
                                   : log_core_integral(u.dim(), u.grid().r_min(), R, [&](double L) {
                                       return ps * lu0 - e * std::log(-std::expm1(-gamma * L));
                                     });
  quad::LogIntegral li = body;
  const std::array<double, 2> parts{body.log_value, core};
  li.log_value = quad::log_sum_exp(parts);
  const double lS = log_sobolev_constant(N, p);
  const double lhs = std::exp(lS + (p / ps) * li.log_value);
  auto rep = make(InequalityKind::improved_sobolev, P, lhs, gradient_energy(u, p));
  rep.diagnostics["constant"] = std::exp(lS);
  rep.diagnostics["log_weighted_integral"] = li.log_value;
  rep.diagnostics["gamma"] = gamma;
  return rep;
}

InequalityReport eval_improved_hardy(const RadialFn& u, const Params& P) {
  need_ball(u, InequalityKind::improved_hardy);
  need_dim(u, P);
  const double p = P.p;
  const double gamma = gamma_exp(P);
  const double R = u.domain().radius;
  const std::size_t n = u.size();
  std::vector<double> d(n);
  bool removable = false;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = u.grid()[i];
    const double w = boundary_factor(r, R, gamma);
    if (w <= 0.0) {
      if (u[i] != 0.0) fail(ErrorKind::singularity, "improved_hardy weight is singular where u != 0");
      d[i] = 0.0;
      removable = i == n - 1;
      continue;
    }
    d[i] = std::pow(std::abs(u[i]) / (r * w), p);
  }
  if (removable) fill_last_node(d);
  const double body = integrate_dx(u.grid(), u.domain(), d, std::nullopt, quad::OnDivergence::throw_error, false).value;
  const double lu0 = log_abs(u[0]);
  const double core = lu0 == -kInf ? 0.0
                                   : std::exp(log_core_integral(u.dim(), u.grid().r_min(), R, [&](double L) {
                                       return p * (lu0 - std::log(R) + L - std::log(-std::expm1(-gamma * L)));
                                     }));
  const double raw = body + core;
  const double H = constant(ConstantKind::hardy, P);
  auto rep = make(InequalityKind::improved_hardy, P, H * raw, gradient_energy(u, p));
  rep.diagnostics["constant"] = H;
  rep.diagnostics["raw_lhs"] = raw;
  rep.diagnostics["gamma"] = gamma;
  return rep;
}

InequalityReport eval_lower_dim(const RadialFn& u, const Params& P) {
  const int m = u.dim();
  if (P.m && *P.m != m) fail(ErrorKind::domain, "params.m does not match the grid dimension");
  const double N = P.N, p = P.p;
  require(m > p && m <= N, "lower_dim needs p < m <= N");
  const double E = N * p / (N - p);
  const double wpow = (N - m) * p / (N - p);
  std::vector<double> y(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double lu = log_abs(u[i]);
    y[i] = lu == -kInf ? -kInf : E * lu - wpow * u.grid().s(i);
  }
  const auto li = log_integrate_dx(u.grid(), u.domain(), y);
  const double lc = log_lower_dim_coeff(N, m, p);
  Params Pm = P;
  Pm.m = m;
  auto rep = make(InequalityKind::lower_dim, Pm, std::exp(lc + ((N - p) / N) * li.log_value), gradient_energy(u, p));
  rep.diagnostics["constant"] = std::exp(lc);
  rep.diagnostics["log_weighted_integral"] = li.log_value;
  rep.diagnostics["exponent"] = E;
  return rep;
}

InequalityReport eval_q_norm_bound(const RadialFn& u, const Params& P) {
  need_ball(u, InequalityKind::q_norm_bound);
  need_dim(u, P);
  const double N = P.N, q = P.q;
  require(q > N, "q_norm_bound needs q > N");
  const double norm = lq_norm(u, q);
  const double g = std::pow(gradient_energy(u, N), 1.0 / N);
  const double measure = u.measure();
  const double scale = std::exp(((N - 1.0) / N - 1.0 / q) * std::log(q) + std::log(measure) / q) * g;
  auto rep = make(InequalityKind::q_norm_bound, P, norm, scale);
  rep.diagnostics["ratio"] = scale > 0.0 ? norm / scale : 0.0;
  rep.diagnostics["lq_norm"] = norm;
  rep.diagnostics["grad_norm"] = g;
  rep.notes.push_back("constant C unknown; lhs and rhs omit it and the ratio is the diagnostic");
  return rep;
}

}  // namespace

bool InequalityReport::holds(double rel) const {
  return deficit >= -rel * std::max({std::abs(lhs), std::abs(rhs), 1.0});
}

double gradient_energy(const RadialFn& u, double p) {
  const auto& grid = u.grid();
  const std::size_t n = u.size();
  const auto v = u.values();
  const auto r = grid.nodes();
  const std::vector<std::size_t> kinks = detail::kink_cells(v);
  std::vector<double> du(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t w = stencil_start(i, n, kinks);
    du[i] = d_window(v, w, i - w) / d_window(r, w, i - w);
  }
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = std::pow(std::abs(du[i]), p);
  if (!u.domain().is_ball()) {
    double dmax = 0.0;
    for (double x : du) dmax = std::max(dmax, std::abs(x));
    if (dmax > 0.0 && std::abs(du.back()) > RadialFn::kTailThreshold * dmax) d.back() = 0.0;
  }
  double total = integrate_dx(grid, u.domain(), d).value;

  // A kink cell is integrated in two pieces split where the one-sided
  // tangents (in s) cross, replacing its trapezoid share. Cells next to the
  // end corrections are left alone.
  const double N = u.dim();
  const double h = grid.step();
  const double omega = std::exp(log_omega(N));
  auto piece = [&](double a, double b) {  // int_a^b e^{(N - p) s} ds
    const double k = N - p;
    if (std::abs(k * (b - a)) < 1e-12) return std::exp(k * a) * (b - a);
    return std::exp(k * a) * std::expm1(k * (b - a)) / k;
  };
  for (std::size_t c : kinks) {
    if (c < 4 || c + 5 >= n) continue;
    const double Dl = du[c] * r[c], Dr = du[c + 1] * r[c + 1];  // du/ds
    if (Dl == Dr) continue;
    double t = (v[c + 1] - v[c] - Dr * h) / (Dl - Dr);
    if (!(t >= -0.5 * h && t <= 1.5 * h)) continue;
    t = std::clamp(t, 0.0, h);  // a kink on a node lands just outside by rounding
    const double sc = grid.s(c), split = sc + t, se = grid.s(c + 1);
    const double exact = std::pow(std::abs(Dl), p) * piece(sc, split) + std::pow(std::abs(Dr), p) * piece(split, se);
    const double trap = 0.5 * h * (d[c] * std::pow(r[c], N) + d[c + 1] * std::pow(r[c + 1], N));
    total += omega * (exact - trap);
  }
  return total;
}

double power_integral(const RadialFn& u, double p, double power) {
  std::vector<double> d(u.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = u[i] == 0.0 ? 0.0 : std::pow(std::abs(u[i]), p) * std::pow(u.grid()[i], power);
  return integrate_dx(u.grid(), u.domain(), d).value;
}

double lq_norm(const RadialFn& u, double q) { return high_exponent_norm(u, q); }

InequalityReport evaluate(InequalityKind kind, const RadialFn& u, const Params& P) {
  switch (kind) {
    case InequalityKind::hardy: return eval_hardy(u, P);
    case InequalityKind::sobolev: return eval_sobolev(u, P);
    case InequalityKind::trudinger_moser: return eval_trudinger_moser(u, P);
    case InequalityKind::critical_hardy: return eval_critical_hardy(u, P);
    case InequalityKind::alvino: return eval_alvino(u, P);
    case InequalityKind::log_sobolev: return eval_log_sobolev(u, P);
    case InequalityKind::improved_sobolev: return eval_improved_sobolev(u, P);
    case InequalityKind::improved_hardy: return eval_improved_hardy(u, P);
    case InequalityKind::lower_dim: return eval_lower_dim(u, P);
    case InequalityKind::q_norm_bound: return eval_q_norm_bound(u, P);
  }
  fail(ErrorKind::domain, "unknown inequality kind");
}

double radial_lemma_margin(const RadialFn& u) {
  require(u.domain().is_ball(), "radial_lemma_margin needs a ball function");
  if (u.is_zero()) return 0.0;
  const double N = u.dim();
  const double g = std::pow(gradient_energy(u, N), 1.0 / N);
  if (!(g > 0.0)) fail(ErrorKind::inconsistency, "nonzero u with zero gradient norm");
  const double c = std::exp(-log_omega(N) / N) * g;
  const double R = u.domain().radius;
  double margin = kInf;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double L = std::max(0.0, std::log(R / u.grid()[i]));
    margin = std::min(margin, c * std::pow(L, (N - 1.0) / N) - std::abs(u[i]));
  }
  return margin;
}

std::string_view to_string(InequalityKind kind) {
  for (const auto& [k, name] : kNames)
    if (k == kind) return name;
  return "?";
}

std::optional<InequalityKind> parse_inequality_kind(std::string_view name) {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  return std::nullopt;
}

}  // namespace ineqlab
