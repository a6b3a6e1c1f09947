#include "ineqlab/varopt.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ineqlab/error.hpp"
#include "ineqlab/families.hpp"
#include "ineqlab/functionals.hpp"
#include "ineqlab/quadrature.hpp"
#include "ineqlab/specfun.hpp"

namespace ineqlab {
namespace {

double signed_pow(double x, double e) {
  if (x == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(x), e), x);
}

// Thomas algorithm for the symmetric tridiagonal system (diag, off) z = b.
std::vector<double> solve_tridiagonal(std::vector<double> diag, const std::vector<double>& off, std::vector<double> b) {
  const std::size_t n = diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      const double m = off[i - 1] / diag[i - 1];
      diag[i] -= m * off[i - 1];
      b[i] -= m * b[i - 1];
    }
  }
  std::vector<double> z(n);
  z[n - 1] = b[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) z[i] = (b[i] - off[i] * z[i + 1]) / diag[i];
  return z;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

}  // namespace

DiscreteQuotient::DiscreteQuotient(QuotientSpec spec) : spec_(std::move(spec)) {
  const RadialGrid& g = spec_.grid;
  const int Ni = g.dim();
  const double N = Ni;
  require(Ni == spec_.params.N, "quotient grid dimension does not match params.N");
  if (spec_.domain.is_ball())
    require(std::abs(g.r_max() - spec_.domain.radius) <= 1e-12 * spec_.domain.radius,
            "ball quotient needs r_max = R");
  const double omega = specfun::sphere_area(Ni);
  const double r0 = g.r_min();

  std::vector<double> rho(g.size());
  switch (spec_.kind) {
    case QuotientKind::hardy:
      p_ = spec_.params.p;
      require(p_ >= 1.0 && p_ < N, "hardy quotient needs 1 <= p < N");
      q_ = p_;
      for (std::size_t i = 0; i < g.size(); ++i) rho[i] = std::pow(g[i], N - p_);
      core_w_ = omega * std::pow(r0, N - p_) / (N - p_);
      break;
    case QuotientKind::sobolev:
      p_ = spec_.params.p;
      require(p_ >= 1.0 && p_ < N, "sobolev quotient needs 1 <= p < N");
      q_ = critical_exponent(N, p_);
      for (std::size_t i = 0; i < g.size(); ++i) rho[i] = std::pow(g[i], N);
      core_w_ = omega * std::pow(r0, N) / N;
      break;
    case QuotientKind::critical_hardy: {
      require(spec_.domain.is_ball(), "critical_hardy quotient needs a ball");
      p_ = q_ = N;
      const double a = spec_.params.a, beta = spec_.params.beta_or_N();
      const double R = spec_.domain.radius;
      require(a >= 1.0, "critical_hardy quotient needs a >= 1");
      require(beta > 1.0, "critical_hardy quotient needs beta > 1");
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double L = std::log(a * R / g[i]);
        rho[i] = L > 0.0 ? std::pow(L, -beta) : 0.0;
      }
      core_w_ = omega * std::pow(std::log(a * R / r0), 1.0 - beta) / (beta - 1.0);
      break;
    }
  }

  const std::vector<double> w = quad::weights(g.size(), g.step());
  node_w_.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) node_w_[i] = omega * w[i] * rho[i];
  node_w_.back() = 0.0;  // u(r_max) = 0 is enforced; the weight may be singular there

  cell_mass_.resize(g.size() - 1);
  cell_dr_.resize(g.size() - 1);
  for (std::size_t c = 0; c + 1 < g.size(); ++c) {
    cell_mass_[c] = omega / N * (std::pow(g[c + 1], N) - std::pow(g[c], N));
    cell_dr_[c] = g[c + 1] - g[c];
  }
}

double DiscreteQuotient::energy(const std::vector<double>& u) const {
  require(u.size() == spec_.grid.size(), "node vector does not match the grid");
  double E = 0.0;
  for (std::size_t c = 0; c < cell_mass_.size(); ++c)
    E += cell_mass_[c] * std::pow(std::abs((u[c + 1] - u[c]) / cell_dr_[c]), p_);
  return E;
}

void DiscreteQuotient::denominator_parts(const std::vector<double>& u, double& sum, std::vector<double>* dsum) const {
  require(u.size() == spec_.grid.size(), "node vector does not match the grid");
  sum = core_w_ * std::pow(std::abs(u[0]), q_);
  for (std::size_t i = 0; i < u.size(); ++i) sum += node_w_[i] * std::pow(std::abs(u[i]), q_);
  if (dsum) {
    dsum->assign(u.size(), 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) (*dsum)[i] = q_ * node_w_[i] * signed_pow(u[i], q_ - 1.0);
    (*dsum)[0] += q_ * core_w_ * signed_pow(u[0], q_ - 1.0);
  }
}

double DiscreteQuotient::denominator(const std::vector<double>& u) const {
  double S = 0.0;
  denominator_parts(u, S, nullptr);
  return std::pow(S, p_ / q_);
}

double DiscreteQuotient::value(const std::vector<double>& u) const {
  const double D = denominator(u);
  if (!(D > 0.0)) fail(ErrorKind::domain, "quotient of the zero function");
  return energy(u) / D;
}

std::vector<double> DiscreteQuotient::gradient(const std::vector<double>& u) const {
  const std::size_t n = u.size();
  std::vector<double> dE(n, 0.0);
  double E = 0.0;
  for (std::size_t c = 0; c + 1 < n; ++c) {
    const double s = (u[c + 1] - u[c]) / cell_dr_[c];
    E += cell_mass_[c] * std::pow(std::abs(s), p_);
    const double t = cell_mass_[c] * p_ * signed_pow(s, p_ - 1.0) / cell_dr_[c];
    dE[c + 1] += t;
    dE[c] -= t;
  }
  double S = 0.0;
  std::vector<double> dS;
  denominator_parts(u, S, &dS);
  if (!(S > 0.0)) fail(ErrorKind::domain, "quotient of the zero function");
  const double D = std::pow(S, p_ / q_);
  const double dDdS = (p_ / q_) * D / S;
  const double Q = E / D;
  std::vector<double> grad(n);
  for (std::size_t i = 0; i < n; ++i) grad[i] = (dE[i] - Q * dDdS * dS[i]) / D;
  return grad;
}

double DiscreteQuotient::analytic_constant() const {
  const Params& P = spec_.params;
  switch (spec_.kind) {
    case QuotientKind::hardy: return constant(ConstantKind::hardy, P);
    case QuotientKind::sobolev: return constant(ConstantKind::sobolev, P);
    case QuotientKind::critical_hardy:
      if (P.a == 1.0 && P.beta_or_N() == static_cast<double>(P.N)) return constant(ConstantKind::critical_hardy, P);
      return std::numeric_limits<double>::quiet_NaN();
  }
  return std::numeric_limits<double>::quiet_NaN();
}

RayleighResult minimize_rayleigh(const QuotientSpec& spec, const RadialFn& init, int max_iters, double tol) {
  require(max_iters >= 1, "max_iters must be positive");
  require(tol > 0.0, "tol must be positive");
  const RadialGrid& g = spec.grid;
  require(init.size() == g.size() && std::abs(init.grid().r_min() - g.r_min()) <= 1e-12 * g.r_min() &&
              std::abs(init.grid().r_max() - g.r_max()) <= 1e-12 * g.r_max(),
          "initial function must live on the quotient grid");
  const DiscreteQuotient Q(spec);
  const std::size_t n = g.size();

  // Piecewise-linear stiffness with u(r_max) = 0 removed from the system.
  std::vector<double> diag(n - 1, 0.0), off(n - 2, 0.0);
  {
    const double omega = specfun::sphere_area(g.dim()), N = g.dim();
    for (std::size_t c = 0; c + 1 < n; ++c) {
      const double dr = g[c + 1] - g[c];
      const double k = omega / N * (std::pow(g[c + 1], N) - std::pow(g[c], N)) / (dr * dr);
      diag[c] += k;
      if (c + 1 < n - 1) {
        diag[c + 1] += k;
        off[c] = -k;
      }
    }
  }

  std::vector<double> u(init.values().begin(), init.values().end());
  u.back() = 0.0;
  auto normalize = [&](std::vector<double>& v) {
    const double s = std::pow(Q.denominator(v), -1.0 / Q.exponent());
    for (double& x : v) x *= s;
  };
  normalize(u);

  RayleighResult res;
  res.trace = SweepTable({"iter", "quotient", "step_size", "grad_norm"});
  double q = Q.value(u);
  res.initial_value = q;
  res.status = "max_iters";
  double alpha = 1.0;
  std::vector<double> trial(n);
  int it = 0;
  for (; it < max_iters; ++it) {
    std::vector<double> G = Q.gradient(u);
    for (double& x : G) x /= q;  // gradient of ln Q
    G.back() = 0.0;
    const double gnorm = std::sqrt(dot(G, G)) * q;
    if (!std::isfinite(gnorm))
      fail(ErrorKind::numerical, "non-finite gradient at iteration " + std::to_string(it));
    std::vector<double> z = solve_tridiagonal(diag, off, std::vector<double>(G.begin(), G.end() - 1));
    z.push_back(0.0);
    const double slope = dot(G, z);
    if (!(slope > 0.0)) {
      res.status = "converged";
      res.trace.add_row({double(it), q, 0.0, gnorm});
      break;
    }
    const double lq = std::log(q);
    double qn = q;
    bool accepted = false;
    while (alpha >= 1e-14) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = u[i] - alpha * z[i];
      trial.back() = 0.0;
      const double D = Q.denominator(trial);
      if (D > 0.0 && std::isfinite(D)) {
        qn = Q.energy(trial) / D;
        if (std::isfinite(qn) && std::log(qn) <= lq - 1e-4 * alpha * slope) {
          accepted = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    res.trace.add_row({double(it), q, accepted ? alpha : 0.0, gnorm});
    if (!accepted) {
      res.status = "stalled";
      break;
    }
    u = trial;
    normalize(u);
    const double dq = q - qn;
    q = qn;
    alpha *= 2.0;
    if (dq <= tol * q) {
      res.status = "converged";
      ++it;
      res.trace.add_row({double(it), q, alpha, 0.0});
      break;
    }
  }
  res.iterations = it;
  res.value = q;
  res.minimizer = std::move(u);
  return res;
}

SweepTable minimizing_sequence_sweep(SequenceKind kind, const Params& params, const std::vector<double>& eps,
                                     std::size_t grid_points) {
  require(!eps.empty(), "sweep needs at least one epsilon");
  const RadialGrid grid = RadialGrid::ball(params.N, params.R, grid_points);
  const double N = params.N;
  SweepTable t({"epsilon", "quotient", "constant", "gap"});
  for (double e : eps) {
    double quotient = 0.0, C = 0.0;
    if (kind == SequenceKind::hardy) {
      const RadialFn u = test_family({FamilyKind::hardy_seq, e}, params, grid);
      quotient = gradient_energy(u, params.p) / power_integral(u, params.p, -params.p);
      C = constant(ConstantKind::hardy, params);
    } else {
      require(params.a == 1.0 && params.beta_or_N() == N, "critical_hardy sequence needs a = 1 and beta = N");
      const double theta = (N - 1.0) / N - e;
      require(theta > 0.0, "critical_hardy sequence needs epsilon < (N-1)/N");
      const RadialFn u = test_family({FamilyKind::log_power, theta}, params, grid);
      std::vector<double> v(u.size());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(std::abs(u[i]), N);
      const RadialFn uN(u.grid(), std::move(v), u.domain());
      quotient = gradient_energy(u, N) / weighted_integral(uN, -N, LogWeight{1.0, N, params.R});
      Params P = params;
      P.p = N;
      C = constant(ConstantKind::critical_hardy, P);
    }
    t.add_row({e, quotient, C, quotient - C});
  }
  t.metadata["sequence"] = kind == SequenceKind::hardy ? "hardy_seq" : "log_power";
  return t;
}

}  // namespace ineqlab
