#include "ineqlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ineqlab/error.hpp"

namespace ineqlab::quad {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Below this value of kappa * L0 the exponential factor is indistinguishable
// from the logarithmic one over the fitted window, so only b decides.
constexpr double kWeakExponential = 0.1;
// Tails smaller than exp(-80) times the body are dropped without fitting.
constexpr double kNegligibleLog = 80.0;

std::size_t fit_stride(std::size_t n) { return std::max<std::size_t>(1, std::min<std::size_t>(4, (n - 1) / 4)); }

struct LeftFit {
  bool ok = false;
  double kappa = 0.0;
  double b = 0.0;
  double L0 = 0.0;
};

LeftFit fit_left(double y0, double y1, double y2, double s0, double d, double c) {
  LeftFit f;
  if (!std::isfinite(y0) || !std::isfinite(y1) || !std::isfinite(y2)) return f;
  const double L0 = c - s0;
  const double D1 = y1 - y0;
  const double D2 = y2 - y1;
  if (L0 > 2.0 * d && c - (s0 + 2.0 * d) > 0.0) {
    const double l0 = std::log(L0), l1 = std::log(c - s0 - d), l2 = std::log(c - s0 - 2.0 * d);
    const double dl1 = l1 - l0, dl2 = l2 - l1;
    f.b = -(D2 - D1) / (dl2 - dl1);
    f.kappa = (D1 + f.b * dl1) / d;
    f.L0 = L0;
  } else {
    f.b = 0.0;
    f.kappa = D1 / d;
    f.L0 = std::max(L0, 1.0);
  }
  f.ok = std::isfinite(f.kappa) && std::isfinite(f.b);
  return f;
}

struct TailResult {
  double log_value = -kInf;
  bool divergent = false;
};

TailResult left_tail(std::span<const double> y, std::size_t d, double s0, double h, double c, double log_body) {
  TailResult r;
  if (!std::isfinite(y[0])) return r;
  if (std::isfinite(log_body) && y[0] < log_body - kNegligibleLog) return r;
  const LeftFit f = fit_left(y[0], y[d], y[2 * d], s0, static_cast<double>(d) * h, c);
  if (!f.ok) return r;
  const double lt = log_tail_factor(f.kappa, f.b, f.L0);
  if (!std::isfinite(lt)) {
    // A fit on rounding noise far below the body is not a singularity.
    if (std::isfinite(log_body) && y[0] < log_body - 35.0) return r;
    r.divergent = true;
    r.log_value = kInf;
    return r;
  }
  r.log_value = y[0] + lt;
  return r;
}

TailResult right_tail(std::span<const double> y, std::size_t d, double h, double log_body) {
  TailResult r;
  const std::size_t n = y.size();
  const double ye = y[n - 1];
  if (!std::isfinite(ye)) return r;
  if (std::isfinite(log_body) && ye < log_body - kNegligibleLog) return r;
  const double yp = y[n - 1 - d];
  if (!std::isfinite(yp)) return r;
  const double kappa = (ye - yp) / (static_cast<double>(d) * h);
  if (kappa < -0.05) {
    r.log_value = ye - std::log(-kappa);
    return r;
  }
  // Non-decaying but already tiny compared with the body: ignore.
  if (std::isfinite(log_body) && ye < log_body - 35.0) return r;
  r.divergent = true;
  r.log_value = kInf;
  return r;
}

double log_add(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace

std::vector<double> weights(std::size_t n, double h) {
  if (n < 8) fail(ErrorKind::domain, "quadrature needs at least 8 nodes");
  std::vector<double> w(n, h);
  constexpr double end[4] = {17.0 / 48.0, 59.0 / 48.0, 43.0 / 48.0, 49.0 / 48.0};
  for (std::size_t i = 0; i < 4; ++i) {
    w[i] = end[i] * h;
    w[n - 1 - i] = end[i] * h;
  }
  return w;
}

double log_sum_exp(std::span<const double> y) {
  double m = -kInf;
  for (double v : y) m = std::max(m, v);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double v : y) s += std::exp(v - m);
  return m + std::log(s);
}

double log_tail_factor(double kappa, double b, double L0) {
  if (!(L0 > 0.0)) L0 = 1.0;
  if (kappa * L0 < kWeakExponential) {
    if (b > 1.0) return std::log(L0 / (b - 1.0));
    return kInf;
  }
  if (std::abs(b) < 1e-12) return -std::log(kappa);
  // x = L0 (e^v - 1):  integrand = exp(phi(v)),
  // phi(v) = ln L0 + (1 - b) v - kappa L0 (e^v - 1).
  const double kl = kappa * L0;
  auto phi = [&](double v) { return std::log(L0) + (1.0 - b) * v - kl * std::expm1(v); };
  const double vstar = (1.0 - b > kl) ? std::log((1.0 - b) / kl) : 0.0;
  const double peak = phi(vstar);
  const double dv = 0.004;
  double v_end = std::max(vstar, 0.0) + dv;
  while (phi(v_end) > peak - 60.0 && v_end < 200.0) v_end += 0.25;
  std::size_t m = static_cast<std::size_t>(std::ceil(v_end / dv));
  if (m % 2) ++m;
  const double step = v_end / static_cast<double>(m);
  double s = 0.0;
  for (std::size_t i = 0; i <= m; ++i) {
    const double wgt = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += wgt * std::exp(phi(static_cast<double>(i) * step) - peak);
  }
  return peak + std::log(s * step / 3.0);
}

LogIntegral log_integrate(std::span<const double> y, double s0, double h, const TailOptions& opt) {
  const std::size_t n = y.size();
  const auto w = weights(n, h);
  std::vector<double> terms(n);
  for (std::size_t i = 0; i < n; ++i) terms[i] = (y[i] == -kInf) ? -kInf : y[i] + std::log(w[i]);
  LogIntegral out;
  const double body = log_sum_exp(terms);
  out.log_value = body;
  out.log_left_tail = -kInf;
  out.log_right_tail = -kInf;
  auto diverge = [&](const char* where) {
    if (opt.on_divergence == OnDivergence::throw_error)
      fail(ErrorKind::singularity, std::string("non-integrable integrand at ") + where);
    out.divergent = true;
    out.log_value = kInf;
  };
  if (opt.left_tail) {
    const auto t = left_tail(y, fit_stride(n), s0, h, opt.log_center, body);
    if (t.divergent) {
      diverge("r -> 0");
      return out;
    }
    out.log_left_tail = t.log_value;
    out.log_value = log_add(out.log_value, t.log_value);
  }
  if (opt.right_tail) {
    const auto t = right_tail(y, fit_stride(n), h, body);
    if (t.divergent) {
      diverge("r -> infinity");
      return out;
    }
    out.log_right_tail = t.log_value;
    out.log_value = log_add(out.log_value, t.log_value);
  }
  return out;
}

Integral integrate(std::span<const double> g, double s0, double h, const TailOptions& opt) {
  const std::size_t n = g.size();
  const auto w = weights(n, h);
  Integral out;
  double body = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(g[i])) fail(ErrorKind::singularity, "integrand is not finite at node " + std::to_string(i));
    body += w[i] * g[i];
    scale += w[i] * std::abs(g[i]);
  }
  out.value = body;
  const double log_scale = scale > 0.0 ? std::log(scale) : -kInf;
  const std::size_t d = fit_stride(n);

  auto same_sign = [&](std::size_t a, std::size_t b, std::size_t c) {
    return (g[a] > 0 && g[b] > 0 && g[c] > 0) || (g[a] < 0 && g[b] < 0 && g[c] < 0);
  };
  auto logabs = [&](std::size_t i) { return g[i] == 0.0 ? -kInf : std::log(std::abs(g[i])); };

  if (opt.left_tail && same_sign(0, d, 2 * d)) {
    std::vector<double> yy(2 * d + 1);
    for (std::size_t i = 0; i <= 2 * d; ++i) yy[i] = logabs(i);
    const auto t = left_tail(yy, d, s0, h, opt.log_center, log_scale);
    if (t.divergent) {
      if (opt.on_divergence == OnDivergence::throw_error) fail(ErrorKind::singularity, "non-integrable integrand at r -> 0");
      out.divergent = true;
      out.value = g[0] > 0 ? kInf : -kInf;
      return out;
    }
    if (std::isfinite(t.log_value)) out.left_tail = std::copysign(std::exp(t.log_value), g[0]);
  }
  if (opt.right_tail && same_sign(n - 1, n - 1 - d, n - 1 - 2 * d)) {
    std::vector<double> yy(2 * d + 1);
    for (std::size_t i = 0; i <= 2 * d; ++i) yy[i] = logabs(n - 1 - 2 * d + i);
    const auto t = right_tail(yy, d, h, log_scale);
    if (t.divergent) {
      if (opt.on_divergence == OnDivergence::throw_error) fail(ErrorKind::singularity, "non-integrable integrand at r -> infinity");
      out.divergent = true;
      out.value = g[n - 1] > 0 ? kInf : -kInf;
      return out;
    }
    if (std::isfinite(t.log_value)) out.right_tail = std::copysign(std::exp(t.log_value), g[n - 1]);
  }
  out.value = body + out.left_tail + out.right_tail;
  return out;
}

}  // namespace ineqlab::quad
