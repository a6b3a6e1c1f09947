#include "ineqlab/limits.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "ineqlab/error.hpp"
#include "ineqlab/functionals.hpp"
#include "ineqlab/specfun.hpp"

namespace ineqlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr std::array<std::pair<SweepKind, std::string_view>, 7> kNames{{
    {SweepKind::sobolev_decay, "sobolev_decay"},
    {SweepKind::hardy_decay, "hardy_decay"},
    {SweepKind::lower_dim_coeff, "lower_dim_coeff"},
    {SweepKind::logsob_coeff, "logsob_coeff"},
    {SweepKind::improved_hardy_lhs, "improved_hardy_lhs"},
    {SweepKind::improved_sobolev_lhs, "improved_sobolev_lhs"},
    {SweepKind::weight_limit, "weight_limit"},
}};

bool is_delta_sweep(SweepKind k) { return k != SweepKind::lower_dim_coeff && k != SweepKind::logsob_coeff; }

double finite_or_inf(double x) { return std::isfinite(x) ? x : kInf; }

Params with_delta(const Params& P, double delta) {
  require(delta > 0.0 && delta < P.N - 1.0, "delta must lie in (0, N - 1)");
  Params Q = P;
  Q.p = P.N - delta;
  return Q;
}

// ln of (1/(n pi (N-2))) (Gamma(N)/Gamma(N/2))^{2/N}.
double log_logsob_coeff(double N, int n) {
  require(N > 2.0, "logsob_coeff needs N > 2");
  return -std::log(n * std::numbers::pi * (N - 2.0)) +
         (2.0 / N) * (specfun::log_gamma(N) - specfun::log_gamma(N / 2.0));
}

// max over nodes r <= 0.9 R of |(A/B)^{p/p*} - 1|, A = (1-(r/R)^g)^e, B = (g ln(R/r))^e.
double weight_gap(const Params& P, const RadialGrid& grid) {
  const double N = P.N, p = P.p, R = P.R;
  const double g = (N - p) / (p - 1.0);
  const double e = (N - 1.0) * p / (N - p);
  const double scale = e * (N - p) / N;  // e p / p*
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid[i];
    if (r > 0.9 * R) break;
    const double lr = std::log(r / R);
    const double log_ratio = std::log(-std::expm1(g * lr)) - std::log(-g * lr);
    worst = std::max(worst, std::abs(std::expm1(scale * log_ratio)));
  }
  return worst;
}

void check_monotone(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] != v[i - 1] && (v[i] > v[i - 1]) == (v[1] > v[0])))
      fail(ErrorKind::domain, "sweep values must be strictly monotone");
}

}  // namespace

std::vector<double> default_deltas() { return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}; }

SweepTable sweep(SweepKind kind, const Params& params, const std::vector<double>& values,
                 const std::optional<RadialFn>& u, const std::optional<RadialGrid>& grid) {
  require(!values.empty(), "sweep needs at least one value");
  check_monotone(values);
  const bool needs_u = kind == SweepKind::improved_hardy_lhs || kind == SweepKind::improved_sobolev_lhs;
  if (needs_u) {
    require(u.has_value(), std::string(to_string(kind)) + " needs a test function");
    require(u->domain().is_ball(), std::string(to_string(kind)) + " needs u on a ball");
    require(u->dim() == params.N, "u's dimension must equal params.N");
  }

  SweepTable t({is_delta_sweep(kind) ? "delta" : "N", "value", "limit", "gap_to_limit"});
  t.metadata["kind"] = std::string(to_string(kind));

  double limit = 0.0;
  switch (kind) {
    case SweepKind::sobolev_decay:
    case SweepKind::hardy_decay:
    case SweepKind::weight_limit: limit = 0.0; break;
    case SweepKind::lower_dim_coeff: {
      require(params.m.has_value(), "lower_dim_coeff needs m");
      const double m = *params.m, p = params.p;
      require(p >= 1.0 && p < m, "lower_dim_coeff needs 1 <= p < m");
      limit = std::pow((m - p) / p, p);
      break;
    }
    case SweepKind::logsob_coeff: {
      const int n = params.n.value_or(1);
      require(n >= 1, "logsob_coeff needs n >= 1");
      limit = 2.0 / (n * std::numbers::pi * std::numbers::e);
      break;
    }
    case SweepKind::improved_hardy_lhs: {
      Params P = params;
      P.p = P.N;
      P.a = 1.0;
      P.beta = static_cast<double>(P.N);
      limit = evaluate(InequalityKind::critical_hardy, *u, P).lhs;
      break;
    }
    case SweepKind::improved_sobolev_lhs: {
      Params P = params;
      P.p = P.N;
      limit = evaluate(InequalityKind::alvino, *u, P).lhs;
      break;
    }
  }

  std::optional<RadialGrid> wgrid;
  if (kind == SweepKind::weight_limit)
    wgrid = grid ? *grid : RadialGrid::ball(params.N, params.R, RadialGrid::kDefaultCount, 1e-6);

  for (double x : values) {
    double v = 0.0;
    switch (kind) {
      case SweepKind::sobolev_decay: {
        const Params P = with_delta(params, x);
        v = std::exp(log_sobolev_constant(P.N, P.p));
        break;
      }
      case SweepKind::hardy_decay: {
        const Params P = with_delta(params, x);
        v = std::exp(P.p * std::log(x / P.p));
        break;
      }
      case SweepKind::lower_dim_coeff:
        require(x > std::max<double>(*params.m, params.p), "lower_dim_coeff needs N > max(m, p)");
        v = std::exp(log_lower_dim_coeff(x, *params.m, params.p));
        break;
      case SweepKind::logsob_coeff: v = std::exp(log_logsob_coeff(x, params.n.value_or(1))); break;
      case SweepKind::improved_hardy_lhs: v = evaluate(InequalityKind::improved_hardy, *u, with_delta(params, x)).lhs; break;
      case SweepKind::improved_sobolev_lhs:
        v = evaluate(InequalityKind::improved_sobolev, *u, with_delta(params, x)).lhs;
        break;
      case SweepKind::weight_limit: v = weight_gap(with_delta(params, x), *wgrid); break;
    }
    v = finite_or_inf(v);
    const double gap = kind == SweepKind::weight_limit ? v : std::abs(v - limit);
    t.add_row({x, v, limit, finite_or_inf(gap)});
  }
  return t;
}

double fit_decay_exponent(const SweepTable& table) {
  require(table.size() >= 4, "fit_decay_exponent needs at least 4 rows");
  const std::size_t vc = table.column_index("value");
  double lo = kInf, hi = 0.0;
  for (const auto& r : table.rows) {
    if (!(r[0] > 0.0)) fail(ErrorKind::domain, "fit_decay_exponent needs positive parameters");
    if (!(r[vc] > 0.0) || !std::isfinite(r[vc])) fail(ErrorKind::domain, "fit_decay_exponent needs positive finite values");
    lo = std::min(lo, r[0]);
    hi = std::max(hi, r[0]);
  }
  require(hi / lo >= 100.0 * (1.0 - 1e-12), "fit_decay_exponent needs rows spanning 2 decades");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& r : table.rows) {
    if (r[0] > 10.0 * lo * (1.0 + 1e-12)) continue;
    const double x = std::log(r[0]), y = std::log(r[vc]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  require(n >= 2, "the smallest decade holds fewer than two rows");
  const double den = n * sxx - sx * sx;
  if (!(den > 0.0)) fail(ErrorKind::numerical, "degenerate decay fit");
  return (n * sxy - sx * sy) / den;
}

double tm_series_ratio_radius(int N, double C, int k) {
  require(N >= 2, "tm series needs N >= 2");
  require(C > 0.0, "C_probe must be positive");
  require(k >= 1, "ratio index must be positive");
  const double c = N / (N - 1.0);
  auto log_term = [&](double kk) {
    return c * kk * std::log(C) + (kk - 1.0) * std::log(c * kk) - specfun::log_gamma(kk + 1.0);
  };
  return std::exp(log_term(k) - log_term(k + 1.0));
}

double tm_series_radius(int N, double C) {
  require(N >= 2, "tm series needs N >= 2");
  require(C > 0.0, "C_probe must be positive");
  const double radius = (N - 1.0) / (N * std::numbers::e * std::pow(C, N / (N - 1.0)));
  const double check = tm_series_ratio_radius(N, C, 1000);
  if (std::abs(check - radius) > 0.01 * radius)
    fail(ErrorKind::inconsistency, "closed-form radius disagrees with the k = 1000 term ratio");
  return radius;
}

std::string_view to_string(SweepKind kind) {
  for (const auto& [k, n] : kNames)
    if (k == kind) return n;
  return "unknown";
}

std::optional<SweepKind> parse_sweep_kind(std::string_view name) {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  return std::nullopt;
}

}  // namespace ineqlab
