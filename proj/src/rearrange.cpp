#include "ineqlab/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ineqlab/error.hpp"
#include "ineqlab/quadrature.hpp"
#include "ineqlab/specfun.hpp"

namespace ineqlab {
namespace {

constexpr double kE = std::numbers::e;

// Scan state: |u| at nodes and ball volumes omega r^N / N.
struct LevelScan {
  std::vector<double> a;    // |u_i|
  std::vector<double> r;
  std::vector<double> vol;  // omega r_i^N / N
  double coef = 0.0;        // omega / N
  double N = 0.0;

  double ball(double rc) const { return coef * std::pow(rc, N); }

  // |{|u| > tau}| (strict) or |{|u| >= tau}|.
  double measure(double tau, bool strict) const {
    auto above = [&](double v) { return strict ? v > tau : v >= tau; };
    double m = above(a[0]) ? vol[0] : 0.0;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
      const double A = a[i], B = a[i + 1];
      const bool ia = above(A), ib = above(B);
      if (ia && ib) {
        m += vol[i + 1] - vol[i];
      } else if (ia != ib) {
        const double rc = r[i] + (tau - A) / (B - A) * (r[i + 1] - r[i]);
        m += ia ? ball(rc) - vol[i] : vol[i + 1] - ball(rc);
      }
    }
    return m;
  }
};

}  // namespace

double RearrangedFn::at(double s) const {
  if (t.empty()) return 0.0;
  if (s <= t.front()) return values.front();
  if (s >= t.back()) return s > measure || values.back() == 0.0 ? 0.0 : values.back();
  // Rightmost sample with t <= s gives a right-continuous reading at jumps.
  const auto it = std::upper_bound(t.begin(), t.end(), s);
  const std::size_t k = static_cast<std::size_t>(it - t.begin());
  const double t0 = t[k - 1], t1 = t[k];
  if (t1 == t0) return values[k];
  return values[k - 1] + (values[k] - values[k - 1]) * (s - t0) / (t1 - t0);
}

RearrangedFn decreasing_rearrangement(const RadialFn& u) {
  const auto& g = u.grid();
  const std::size_t n = g.size();
  LevelScan L;
  L.N = g.dim();
  L.coef = std::exp(specfun::log_sphere_area(L.N)) / L.N;
  L.a.resize(n);
  L.r.assign(g.nodes().begin(), g.nodes().end());
  L.vol.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    L.a[i] = std::abs(u[i]);
    L.vol[i] = L.ball(g[i]);
  }
  RearrangedFn out;
  out.measure = u.measure();
  out.t_floor = L.vol[0];
  std::vector<double> levels(L.a);
  levels.push_back(0.0);
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  for (double tau : levels) {
    const double m_gt = L.measure(tau, true);
    out.t.push_back(m_gt);
    out.values.push_back(tau);
    if (tau > 0.0) {
      const double m_ge = L.measure(tau, false);
      if (m_ge > m_gt) {
        out.t.push_back(m_ge);
        out.values.push_back(tau);
      }
    }
  }
  // Rounding in the scan must not break the ordering of t.
  for (std::size_t i = 1; i < out.t.size(); ++i) out.t[i] = std::max(out.t[i], out.t[i - 1]);
  if (u.domain().is_ball() && out.t.back() < out.measure) {
    out.t.push_back(out.measure);
    out.values.push_back(0.0);
  }
  return out;
}

double lz_quasinorm(const RadialFn& u, const LZIndex& idx, double omega_measure) {
  return lz_quasinorm(decreasing_rearrangement(u), idx, omega_measure);
}

double lz_quasinorm(const RearrangedFn& us, const LZIndex& idx, double omega_measure) {
  require(idx.p > 0.0, "LZ index needs p > 0");
  require(idx.q >= 1.0, "LZ index needs q >= 1");
  require(omega_measure > 0.0, "LZ quasi-norm needs a positive measure");
  const double inv_p = std::isinf(idx.p) ? 0.0 : 1.0 / idx.p;

  if (std::isinf(idx.q)) {
    double sup = 0.0;
    for (std::size_t i = 0; i < us.t.size(); ++i) {
      const double s = us.t[i];
      if (!(s > 0.0) || s > omega_measure || us.values[i] == 0.0) continue;
      const double w = std::pow(s, inv_p) * std::pow(kE + std::abs(std::log(s)), idx.r);
      sup = std::max(sup, w * us.values[i]);
    }
    // p = inf with r >= 0: the supremum is approached as s -> 0.
    if (inv_p == 0.0 && idx.r >= 0.0 && !us.values.empty()) {
      const double lead = us.values.front();
      sup = idx.r > 0.0 ? (lead > 0.0 ? kInfinity : sup) : std::max(sup, lead);
    }
    return sup;
  }

  // Log-uniform grid in sigma = ln s over the support of u*.
  double s_hi = std::min(omega_measure, us.t.back());
  double s_lo = us.t_floor;
  if (!(s_lo > 0.0))
    for (double s : us.t)
      if (s > 0.0) {
        s_lo = s;
        break;
      }
  if (!(s_lo > 0.0) || !(s_hi > s_lo) || us.values.front() == 0.0) return 0.0;
  const std::size_t n = std::max<std::size_t>(us.t.size(), 4096);
  const double sig0 = std::log(s_lo);
  const double h = (std::log(s_hi) - sig0) / static_cast<double>(n - 1);
  std::vector<double> y(n);
  const double q = idx.q;
  for (std::size_t i = 0; i < n; ++i) {
    const double sig = sig0 + static_cast<double>(i) * h;
    // u* is right-continuous; the last node takes the left limit at s_hi.
    const double v = us.at(i + 1 == n ? std::nextafter(s_hi, 0.0) : std::exp(sig));
    y[i] = v == 0.0 ? -kInfinity : q * inv_p * sig + q * idx.r * std::log(kE + std::abs(sig)) + q * std::log(v);
  }
  quad::TailOptions opt;
  opt.log_center = kE;  // e + |sigma| = e - sigma below sigma = 0
  opt.right_tail = std::isinf(omega_measure);
  opt.on_divergence = quad::OnDivergence::infinity;
  const auto li = quad::log_integrate(y, sig0, h, opt);
  if (li.divergent) return kInfinity;
  return std::exp(li.log_value / q);
}

ChainRecord embedding_chain_check(const RadialFn& u, double q) {
  require(u.domain().is_ball(), "embedding chain needs a ball function");
  const double N = u.dim();
  require(q > N && std::isfinite(q), "embedding chain needs q in (N, inf)");
  ChainRecord rec;
  rec.spaces = {LZIndex{kInfinity, N, -1.0}, LZIndex{kInfinity, q, -1.0 + 1.0 / N - 1.0 / q},
                LZIndex{kInfinity, kInfinity, -1.0 + 1.0 / N}};
  const auto us = decreasing_rearrangement(u);
  const double measure = u.measure();
  bool seen_finite = false;
  for (std::size_t i = 0; i < 3; ++i) {
    rec.norms[i] = lz_quasinorm(us, rec.spaces[i], measure);
    rec.finite[i] = std::isfinite(rec.norms[i]);
    if (seen_finite && !rec.finite[i]) rec.monotone = false;
    seen_finite = seen_finite || rec.finite[i];
  }
  return rec;
}

}  // namespace ineqlab
