#include "ineqlab/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ineqlab/error.hpp"
#include "ineqlab/families.hpp"

namespace ineqlab {
namespace {

double smoothstep5_d(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double u = t * (1.0 - t);
  return 30.0 * u * u;
}

// Terms of the non-sharp inequality restricted to the grid nodes.
struct Localized {
  std::vector<double> uk, duk, phiN_gradN, uN_dphiN;
};

Localized localized_terms(const RadialFn& u, const Partition& P, int k) {
  const RadialFn du = radial_derivative(u);
  const std::size_t n = u.size();
  const double N = P.dim();
  Localized L;
  L.uk.resize(n);
  L.duk.resize(n);
  L.phiN_gradN.resize(n);
  L.uN_dphiN.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = u.grid()[i];
    const double ph = P.phi(k, r), dph = P.dphi(k, r);
    L.uk[i] = u[i] * ph;
    L.duk[i] = du[i] * ph + u[i] * dph;
    L.phiN_gradN[i] = std::pow(ph * std::abs(du[i]), N);
    L.uN_dphiN[i] = std::pow(std::abs(u[i] * dph), N);
  }
  return L;
}

double abs_pow_integral(const RadialFn& u, const std::vector<double>& v, double N) {
  std::vector<double> d(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) d[i] = std::pow(std::abs(v[i]), N);
  return integrate_dx(u.grid(), u.domain(), d).value;
}

double log_weighted(const RadialFn& u, const std::vector<double>& v, double a, double beta) {
  const double N = u.dim();
  std::vector<double> vals(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) vals[i] = std::pow(std::abs(v[i]), N);
  RadialFn f(u.grid(), std::move(vals), u.domain());
  return weighted_integral(f, -N, LogWeight{a, beta, u.domain().radius});
}

}  // namespace

Partition::Partition(int N) : N_(N) { require(N >= 2, "partition needs N >= 2"); }

double Partition::psi(double x) const {
  const double s = smoothstep5(x), c = smoothstep5(1.0 - x);
  if (s == 0.0) return 0.0;
  const double D = std::pow(s, N_) + std::pow(c, N_);
  return s / std::pow(D, 1.0 / N_);
}

double Partition::dpsi(double x) const {
  const double s = smoothstep5(x), c = smoothstep5(1.0 - x);
  const double ds = smoothstep5_d(x), dc = -smoothstep5_d(1.0 - x);
  const double D = std::pow(s, N_) + std::pow(c, N_);
  const double dD = N_ * (std::pow(s, N_ - 1) * ds + std::pow(c, N_ - 1) * dc);
  return ds / std::pow(D, 1.0 / N_) - s * dD / (N_ * std::pow(D, 1.0 / N_ + 1.0));
}

double Partition::g(double t) const {
  if (t <= 0.0 || t >= 2.0) return 0.0;
  if (t <= 1.0) return std::pow(psi(t), N_);
  return std::pow(psi(2.0 - t), N_);
}

double Partition::phi(int k, double r) const {
  const double t = std::log(1.0 / r) - k;
  if (t <= 0.0 || t >= 2.0) return 0.0;
  return t <= 1.0 ? psi(t) : psi(2.0 - t);
}

double Partition::dphi(int k, double r) const {
  const double t = std::log(1.0 / r) - k;
  if (t <= 0.0 || t >= 2.0) return 0.0;
  // dt/dr = -1/r
  const double dt = t <= 1.0 ? dpsi(t) : -dpsi(2.0 - t);
  return -dt / r;
}

std::vector<int> Partition::active(double r) const {
  std::vector<int> ks;
  const double t = std::log(1.0 / r);
  const int base = static_cast<int>(std::floor(t));
  for (int k = base - 1; k <= base; ++k)
    if (phi(k, r) > 0.0) ks.push_back(k);
  return ks;
}

double Partition::inner_radius(int k) const { return std::exp(-(k + 2.0)); }
double Partition::outer_radius(int k) const { return std::exp(-static_cast<double>(k)); }

Partition build_partition(int N) { return Partition(N); }

DecayProfile DecayProfile::exp_decay(double rate) {
  return {[rate](double t) { return std::exp(-rate * t); }, [rate](double t) { return -rate * std::exp(-rate * t); },
          [rate](double t) { return -rate * t; }};
}

double admissibility_value(const DecayProfile& f, int N, int k) {
  require(k >= 1, "admissibility needs k >= 1");
  require(N >= 2, "admissibility needs N >= 2");
  double lk, lk2;
  if (f.log_f) {
    lk = f.log_f(k);
    lk2 = f.log_f(k + 2.0);
  } else {
    const double fk = f.f(k), fk2 = f.f(k + 2.0);
    require(fk2 > 0.0, "admissibility needs a positive profile");
    lk = std::log(fk);
    lk2 = std::log(fk2);
  }
  if (!(lk > lk2)) fail(ErrorKind::domain, "admissibility needs f(k) > f(k+2) (f decreasing)");
  const double lg = lk2 - ((N - 1.0) / N) * std::log(lk - lk2);
  return std::exp(lg / k);
}

double ode_margin(const DecayProfile& f, double C, double t0, double t1, int samples) {
  require(samples >= 2 && t1 >= t0, "ode_margin needs a nonempty range");
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double t = t0 + (t1 - t0) * i / (samples - 1);
    m = std::min(m, f.df(t) + C * f.f(t));
  }
  return m;
}

double annulus_weight(int k, int N, double beta) {
  if (k >= 1) return std::pow(static_cast<double>(k), N - beta);
  if (k >= -1) return 1.0;
  return 0.0;
}

RadialFn localize(const RadialFn& u, const Partition& P, int k) {
  std::vector<double> v(u.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = u[i] * P.phi(k, u.grid()[i]);
  return RadialFn(u.grid(), std::move(v), u.domain());
}

InequalityReport annulus_check(const RadialFn& u, const Partition& P, int k, double a, double beta) {
  require(u.domain().is_ball(), "annulus_check needs u on a ball");
  require(u.dim() == P.dim(), "partition dimension does not match u");
  require(a > 1.0, "annulus_check needs a > 1");
  const double N = P.dim();
  InequalityReport rep;
  rep.kind = "annulus";
  rep.params.N = P.dim();
  rep.params.p = N;
  rep.params.a = a;
  rep.params.beta = beta;
  if (beta <= 2.0 * N) rep.notes.push_back("beta <= 2N: the series over annuli is not summable");

  const Localized L = localized_terms(u, P, k);
  const double lhs = log_weighted(u, L.uk, a, beta);
  const double grad = abs_pow_integral(u, L.duk, N);
  const double bk = annulus_weight(k, P.dim(), beta);
  if (k <= -2 && lhs != 0.0) fail(ErrorKind::inconsistency, "annulus k <= -2 meets the unit ball");
  rep.lhs = lhs;
  rep.rhs = bk * grad;
  rep.deficit = rep.rhs - rep.lhs;
  rep.diagnostics["k"] = k;
  rep.diagnostics["b_k"] = bk;
  rep.diagnostics["grad_uk"] = grad;
  rep.diagnostics["ratio"] = grad > 0.0 ? lhs / grad : 0.0;
  rep.diagnostics["phi_grad_u"] = integrate_dx(u.grid(), u.domain(), L.phiN_gradN).value;
  rep.diagnostics["u_grad_phi"] = integrate_dx(u.grid(), u.domain(), L.uN_dphiN).value;
  if (k >= 1) {
    const double pk = N - 1.0 / k;
    rep.diagnostics["p_k"] = pk;
    rep.diagnostics["hardy_constant_p_k"] = std::pow((N - pk) / pk, pk);
  }
  if (P.outer_radius(k) < u.grid().r_min()) rep.notes.push_back("annulus lies below the grid's r_min");
  return rep;
}

InequalityReport assemble_critical_hardy(const RadialFn& u, double a, double beta) {
  require(u.domain().is_ball(), "assemble_critical_hardy needs u on a ball");
  require(a > 1.0, "assemble_critical_hardy needs a > 1");
  const int Ni = u.dim();
  const double N = Ni;
  InequalityReport rep;
  rep.kind = "assembled_critical_hardy";
  rep.params.N = Ni;
  rep.params.p = N;
  rep.params.a = a;
  rep.params.beta = beta;
  if (beta <= 2.0 * N) rep.notes.push_back("beta <= 2N: outside the summability range of the proof");

  std::vector<double> v(u.values().begin(), u.values().end());
  rep.lhs = log_weighted(u, v, a, beta);
  rep.rhs = gradient_energy(u, N);
  rep.deficit = rep.rhs - rep.lhs;

  const Partition P(Ni);
  const int k_max = static_cast<int>(std::ceil(std::log(u.domain().radius / u.grid().r_min())));
  double bound = 0.0;
  for (int k = -1; k <= k_max; ++k) {
    const Localized L = localized_terms(u, P, k);
    bound += annulus_weight(k, Ni, beta) * abs_pow_integral(u, L.duk, N);
  }
  double series = 0.0;
  for (int k = 10000; k >= 1; --k) series += std::pow(static_cast<double>(k), -1.0 - (beta - 2.0 * N));
  rep.diagnostics["partition_bound"] = bound;
  rep.diagnostics["series_tail"] = series;
  rep.diagnostics["ratio"] = rep.lhs > 0.0 ? rep.rhs / rep.lhs : 0.0;
  rep.diagnostics["annuli"] = k_max + 2;
  return rep;
}

}  // namespace ineqlab
