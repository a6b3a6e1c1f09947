#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "ineqlab/families.hpp"
#include "ineqlab/transforms.hpp"
#include "ineqlab/varopt.hpp"
#include "oracles.hpp"

using namespace ineqlab;
using testing::on_ball;

namespace {

QuotientSpec spec(QuotientKind kind, int N, double p, bool ball, std::size_t n = 1024) {
  Params P;
  P.N = N;
  P.p = p;
  return QuotientSpec{kind, P, ball ? RadialGrid::ball(N, 1.0, n) : RadialGrid::whole_space(N, n),
                      ball ? Domain::ball(1.0) : Domain::whole_space()};
}

std::vector<double> values_of(const RadialFn& u) { return {u.values().begin(), u.values().end()}; }

RadialFn bubble(const RadialGrid& g, double scale = 1.0) {
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(1.0 + std::pow(g[i] / scale, 2.0), -0.5);
  return RadialFn(g, v, Domain::whole_space());
}

}  // namespace

TEST_CASE("discrete gradient matches central differences") {
  const std::vector<QuotientSpec> specs = {spec(QuotientKind::hardy, 3, 2, true, 256),
                                           spec(QuotientKind::sobolev, 3, 2, false, 256),
                                           spec(QuotientKind::critical_hardy, 2, 2, true, 256),
                                           spec(QuotientKind::hardy, 4, 1.5, true, 256)};
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  for (const auto& s : specs) {
    const DiscreteQuotient Q(s);
    std::vector<double> u(s.grid.size());
    for (std::size_t i = 0; i < u.size(); ++i)
      u[i] = s.domain.is_ball() ? (1.0 - s.grid[i]) * (1.2 + 0.3 * s.grid[i] * s.grid[i]) : 1.0 / (1.0 + s.grid[i] * s.grid[i]);
    if (s.domain.is_ball()) u.back() = 0.0;
    const auto g = Q.gradient(u);
    double worst = 0.0;
    for (int d = 0; d < 20; ++d) {
      std::vector<double> dir(u.size());
      for (std::size_t i = 0; i < dir.size(); ++i) dir[i] = nd(rng) * std::abs(u[i]);
      if (s.domain.is_ball()) dir.back() = 0.0;
      const double h = 1e-6;
      std::vector<double> up(u), um(u);
      for (std::size_t i = 0; i < u.size(); ++i) up[i] += h * dir[i], um[i] -= h * dir[i];
      const double fd = (Q.value(up) - Q.value(um)) / (2 * h);
      double an = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) an += g[i] * dir[i];
      worst = std::max(worst, std::abs(an - fd) / std::max(std::abs(fd), 1e-300));
    }
    INFO("kind " << int(s.kind) << " N " << s.params.N);
    CHECK(worst <= 1e-5);
  }
}

TEST_CASE("Hardy descent approaches 1/4 from above") {
  const auto s = spec(QuotientKind::hardy, 3, 2, true);
  const RayleighResult r = minimize_rayleigh(s, on_ball(3, 1.0, [](double x) { return 1 - x; }, 1024));
  const auto q = r.trace.column("quotient");
  const auto step = r.trace.column("step_size");
  for (std::size_t i = 1; i < q.size(); ++i)
    if (step[i] > 0.0) CHECK(q[i] < q[i - 1]);
  for (double v : q) CHECK(v >= 0.25 - 1e-3);
  MESSAGE("hardy " << r.initial_value << " -> " << r.value << " (" << r.status << ")");
  CHECK(r.value >= 0.25 - 1e-3);
  CHECK(std::abs(r.value - 0.25) < std::abs(r.initial_value - 0.25));
}

TEST_CASE("Sobolev descent from the pushed cone reaches the sharp constant") {
  const double S = oracle::sobolev(3, 2).convert_to<double>();
  CHECK(S == doctest::Approx(5.478).epsilon(1e-3));
  const auto s = spec(QuotientKind::sobolev, 3, 2, false);
  const auto b = TransformSpec::ball_to_space(3, 2.0, 1.0);
  const RadialFn init = push_function(b, on_ball(3, 1.0, [](double x) { return 1 - x; }, 1024), s.grid);
  const RayleighResult r = minimize_rayleigh(s, init);
  MESSAGE("sobolev " << r.initial_value << " -> " << r.value << " oracle " << S);
  CHECK(std::abs(r.value / S - 1.0) <= 0.02);
  for (double v : r.trace.column("quotient")) CHECK(v >= S - 1e-3);

  const RayleighResult again = minimize_rayleigh(s, RadialFn(s.grid, r.minimizer, s.domain));
  CHECK(again.value == doctest::Approx(r.value).epsilon(1e-6));
}

TEST_CASE("critical Hardy descent stays above its constant") {
  const auto s = spec(QuotientKind::critical_hardy, 2, 2, true);
  const RayleighResult r = minimize_rayleigh(s, on_ball(2, 1.0, [](double x) { return 1 - x; }, 1024), 2000);
  MESSAGE("critical_hardy " << r.initial_value << " -> " << r.value);
  CHECK(r.value < r.initial_value);
  for (double v : r.trace.column("quotient")) CHECK(v >= 0.25 - 1e-3);
}

TEST_CASE("Sobolev quotient scale and dilation behaviour") {
  const auto s = spec(QuotientKind::sobolev, 3, 2, false, 4096);
  const DiscreteQuotient Q(s);
  const RadialFn u = bubble(s.grid);
  std::vector<double> v = values_of(u), v7 = v;
  for (double& x : v7) x *= 7.0;
  CHECK(std::abs(Q.value(v7) / Q.value(v) - 1.0) <= 1e-10);
  for (double lambda : {0.25, 3.0, 20.0})
    CHECK(std::abs(Q.value(values_of(bubble(s.grid, lambda))) / Q.value(v) - 1.0) <= 0.01);
}

TEST_CASE("minimizing sequences") {
  Params P;
  P.N = 3;
  P.p = 2;
  const SweepTable h = minimizing_sequence_sweep(SequenceKind::hardy, P, {0.4, 0.2, 0.1, 0.05});
  auto q = h.column("quotient");
  MESSAGE("hardy sequence " << q[0] << " " << q[1] << " " << q[2] << " " << q[3]);
  for (std::size_t i = 1; i < q.size(); ++i) CHECK(q[i] < q[i - 1]);
  for (double v : q) CHECK(v >= 0.25 - 1e-3);

  P.N = 2;
  const SweepTable c = minimizing_sequence_sweep(SequenceKind::critical_hardy, P, {0.3, 0.15, 0.075});
  q = c.column("quotient");
  MESSAGE("critical sequence " << q[0] << " " << q[1] << " " << q[2]);
  for (std::size_t i = 1; i < q.size(); ++i) CHECK(q[i] < q[i - 1]);
  for (double v : q) CHECK(v >= 0.25 - 1e-3);
  CHECK(c.column("constant")[0] == doctest::Approx(0.25));

  for (auto [kind, N, e] : {std::tuple{SequenceKind::hardy, 3, 0.1}, std::tuple{SequenceKind::critical_hardy, 2, 0.15}}) {
    P.N = N;
    const double a = minimizing_sequence_sweep(kind, P, {e}, 2048).column("quotient")[0];
    const double b = minimizing_sequence_sweep(kind, P, {e}, 4096).column("quotient")[0];
    CHECK(std::abs(b / a - 1.0) < 0.005);
  }
}
