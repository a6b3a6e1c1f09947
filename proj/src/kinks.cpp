#include "kinks.hpp"

#include <algorithm>
#include <cmath>

namespace ineqlab::detail {

std::vector<std::size_t> kink_cells(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> out;
  if (n < 8) return out;
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  auto d2 = [&](std::size_t j) { return std::abs(v[j + 1] - 2.0 * v[j] + v[j - 1]); };
  std::vector<double> score(n, 0.0);
  for (std::size_t c = 2; c + 3 < n; ++c) {
    const double a = d2(c) + d2(c + 1);
    const double b = d2(c - 1) + d2(c + 2);
    if (a > 1e-10 * vmax && a > 100.0 * b) score[c] = a;
  }
  // A kink sitting on a node flags both cells around it; keep the stronger.
  for (std::size_t c = 2; c + 3 < n; ++c) {
    if (score[c] == 0.0) continue;
    if (score[c - 1] > score[c] || score[c + 1] >= score[c]) continue;
    out.push_back(c);
  }
  return out;
}

KinkSampler::KinkSampler(const RadialFn& u) : u_(u), kinks_(kink_cells(u.values())) {}

double KinkSampler::operator()(double r) const {
  const RadialGrid& g = u_.grid();
  const std::size_t n = g.size();
  if (kinks_.empty() || !(r > g.r_min()) || !(r < g.r_max())) return u_.at(r);
  const double s = std::log(r);
  const auto k = std::min(static_cast<std::size_t>(std::floor((s - g.s0()) / g.step())), n - 2);
  // Cubic through nodes a..a+3, evaluated at s.
  auto cubic = [&](std::size_t a) {
    double sum = 0.0;
    for (std::size_t i = a; i < a + 4; ++i) {
      double w = u_[i];
      for (std::size_t j = a; j < a + 4; ++j)
        if (j != i) w *= (s - g.s(j)) / (g.s(i) - g.s(j));
      sum += w;
    }
    return sum;
  };
  for (std::size_t c : kinks_) {
    if (c < 3 || c + 5 > n) continue;
    if (k + 1 == c) return cubic(c - 3);
    if (k == c + 1) return cubic(c + 1);
    if (k != c) continue;
    const double left = cubic(c - 3), right = cubic(c + 1);
    const double bend = u_[c + 2] - u_[c + 1] - (u_[c] - u_[c - 1]);
    return bend > 0.0 ? std::max(left, right) : std::min(left, right);
  }
  return u_.at(r);
}

}  // namespace ineqlab::detail
