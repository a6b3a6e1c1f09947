#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "helpers.hpp"
#include "ineqlab/families.hpp"
#include "ineqlab/grid.hpp"
#include "ineqlab/specfun.hpp"

using namespace ineqlab;
using testing::on_ball;
using testing::sample;
using testing::throws_kind;
using std::numbers::pi;

TEST_CASE("grid layout") {
  const RadialGrid g(3, 1e-4, 10.0, 257);
  CHECK(g.r_min() == 1e-4);
  CHECK(g.r_max() == 10.0);
  for (std::size_t i = 1; i < g.size(); ++i) {
    CHECK(g[i] > g[i - 1]);
    const double ds = std::log(g[i]) - std::log(g[i - 1]);
    CHECK(std::abs(ds - g.step()) <= 1e-12 * g.step() * 1e3);
  }
  const RadialGrid r = g.refined();
  CHECK(r.size() == 513);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(r[2 * i] == doctest::Approx(g[i]).epsilon(1e-14));
  const RadialGrid b = RadialGrid::ball(3, 2.0);
  CHECK(b.size() == 4096);
  CHECK(b.r_max() == 2.0);
  CHECK(b.r_min() == doctest::Approx(2e-8).epsilon(1e-14));
  const RadialGrid w = RadialGrid::whole_space(3);
  CHECK(w.r_max() == doctest::Approx(1e6).epsilon(1e-14));
}

TEST_CASE("grid and function preconditions") {
  CHECK(throws_kind([] { RadialGrid(3, 1.0, 0.5, 64); }, ErrorKind::domain));
  CHECK(throws_kind([] { RadialGrid(3, 1e-3, 1.0, 15); }, ErrorKind::domain));
  const RadialGrid g = RadialGrid::ball(3, 1.0, 64);
  CHECK(throws_kind([&] { RadialFn(g, std::vector<double>(63, 0.0), Domain::ball(1.0)); }, ErrorKind::domain));
  std::vector<double> bad(64, 1.0);
  bad[10] = std::nan("");
  CHECK(throws_kind([&] { RadialFn(g, bad, Domain::ball(1.0)); }, ErrorKind::domain));
  const RadialGrid w = RadialGrid::whole_space(3, 64);
  CHECK(throws_kind([&] { RadialFn(w, std::vector<double>(64, 1.0), Domain::whole_space()); }, ErrorKind::domain));
}

TEST_CASE("weighted_integral reference values") {
  CHECK(weighted_integral(on_ball(2, 1.0, [](double) { return 1.0; }), 0.0) == doctest::Approx(pi).epsilon(1e-8));
  CHECK(weighted_integral(on_ball(3, 1.0, [](double) { return 1.0; }), -2.0) == doctest::Approx(4 * pi).epsilon(1e-8));
  for (int N : {2, 3, 5}) {
    const RadialFn one = on_ball(N, std::exp(-1.0), [](double) { return 1.0; });
    const double v = weighted_integral(one, -N, LogWeight{1.0, 2.0, 1.0});
    CHECK(v == doctest::Approx(specfun::sphere_area(N)).epsilon(1e-6));
  }
}

TEST_CASE("weighted_integral detects a non-integrable singularity") {
  const RadialFn one = on_ball(3, 1.0, [](double) { return 1.0; });
  CHECK(throws_kind([&] { weighted_integral(one, -3.0); }, ErrorKind::singularity));
  CHECK(throws_kind([&] { weighted_integral(one, -4.0); }, ErrorKind::singularity));
}

TEST_CASE("weighted_integral converges at least at second order") {
  // (1 - r^2)^2 on B_1 in R^3: 4 pi int (1 - r^2)^2 r^2 dr = 4 pi * 8 / 105.
  const double exact = 4 * pi * 8.0 / 105.0;
  double prev_err = 0.0;
  for (std::size_t n : {64u, 127u, 253u}) {
    const double err =
        std::abs(weighted_integral(on_ball(3, 1.0, [](double r) { return (1 - r * r) * (1 - r * r); }, n), 0.0) - exact);
    if (prev_err > 0.0) CHECK(prev_err / err >= 3.8);
    prev_err = err;
  }
}

TEST_CASE("weighted_integral is linear") {
  const RadialFn f = on_ball(3, 1.0, [](double r) { return 1 - r; });
  const RadialFn g = on_ball(3, 1.0, [](double r) { return std::sin(3 * r) * (1 - r); });
  const RadialFn absg = on_ball(3, 1.0, [](double r) { return std::abs(std::sin(3 * r) * (1 - r)); });
  const double a = 2.5, b = -1.75;
  std::vector<double> comb(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) comb[i] = a * f[i] + b * g[i];
  const RadialFn h(f.grid(), comb, f.domain());
  for (double power : {0.0, -1.0, -2.0}) {
    const double lhs = weighted_integral(h, power);
    const double rhs = a * weighted_integral(f, power) + b * weighted_integral(g, power);
    const double scale = std::abs(a) * weighted_integral(f, power) + std::abs(b) * weighted_integral(absg, power);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * scale);
  }
}

TEST_CASE("radial_derivative") {
  const RadialGrid g = RadialGrid::ball(3, 1.0, 512);
  const RadialFn lin = sample(g, Domain::ball(1.0), [](double r) { return r; });
  const RadialFn dl = radial_derivative(lin);
  for (std::size_t i = 0; i < dl.size(); ++i) CHECK(std::abs(dl[i] - 1.0) <= 1e-10);
  const RadialFn c = sample(g, Domain::ball(1.0), [](double) { return 3.0; });
  const RadialFn dc = radial_derivative(c);
  for (std::size_t i = 0; i < dc.size(); ++i) CHECK(dc[i] == 0.0);

  double prev = 0.0;
  for (std::size_t n : {64u, 127u, 253u, 505u}) {
    const RadialGrid gn(3, 1e-3, 1.0, n);
    const RadialFn sq = sample(gn, Domain::ball(1.0), [](double r) { return r * r; });
    const RadialFn d = radial_derivative(sq);
    double err = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) err = std::max(err, std::abs(d[i] - 2 * gn[i]) / (2 * gn[i]));
    if (prev > 0.0) {
      const double order = std::log2(prev / err);
      MESSAGE("derivative order " << order);
      CHECK(order >= 1.9);
    }
    prev = err;
  }
}

TEST_CASE("high_exponent_norm") {
  const double c = 0.7;
  for (int N : {2, 3}) {
    const RadialFn f = on_ball(N, 1.0, [&](double) { return c; });
    for (double q : {1.0, 2.0, 50.0, 1e5}) {
      const double expect = c * std::pow(specfun::sphere_area(N) / N, 1.0 / q);
      CHECK(high_exponent_norm(f, q) == doctest::Approx(expect).epsilon(1e-8));
    }
  }
  const RadialFn cone = on_ball(3, 1.0, [](double r) { return 1 - r; });
  // 4 pi int (1 - r)^2 r^2 dr = 4 pi / 30.
  CHECK(high_exponent_norm(cone, 2.0) == doctest::Approx(std::sqrt(4 * pi / 30.0)).epsilon(1e-8));
  CHECK(std::abs(high_exponent_norm(cone, 1e4) - 1.0) <= 1e-2);
  const RadialFn zero = on_ball(3, 1.0, [](double) { return 0.0; });
  CHECK(high_exponent_norm(zero, 7.0) == 0.0);
}

TEST_CASE("high_exponent_norm is monotone in q after normalization") {
  const Params P;
  const RadialGrid g = RadialGrid::ball(3, 1.0);
  const double vol = 4 * pi / 3;
  for (auto spec : {FamilySpec{FamilyKind::cone, 0}, FamilySpec{FamilyKind::moser_seq, 20},
                    FamilySpec{FamilyKind::log_power, 0.5}}) {
    const RadialFn u = test_family(spec, P, g);
    double prev = 0.0;
    for (double q = 1.0; q <= 4096.0; q *= 2) {
      const double v = high_exponent_norm(u, q) / std::pow(vol, 1.0 / q);
      CHECK(v >= prev * (1 - 1e-12));
      prev = v;
    }
  }
}

TEST_CASE("sampled-function ingestion") {
  std::istringstream in("# r value\n0.001 1\n0.5 0.5\n1.0 0.25\n");
  const RadialFn u = read_sampled_function(in, RadialGrid::ball(3, 1.0, 256), Domain::ball(1.0));
  CHECK(u[u.size() - 1] == 0.0);
  // Resampled onto the grid, then read back between grid nodes.
  CHECK(u.at(0.5) == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(u.at(0.01) > u.at(0.5));
  std::istringstream bad("0.5 1\n0.4 2\n");
  CHECK(throws_kind([&] { read_sampled_function(bad, RadialGrid::ball(3, 1.0, 64), Domain::ball(1.0)); }, ErrorKind::io));
  std::istringstream junk("0.5 abc\n");
  CHECK(throws_kind([&] { read_sampled_function(junk, RadialGrid::ball(3, 1.0, 64), Domain::ball(1.0)); }, ErrorKind::io));
}

TEST_CASE("monotone interpolation keeps monotone data monotone") {
  const MonotoneCubic m({0, 1, 2, 3, 4}, {0, 0, 1, 1, 5});
  double prev = -1.0;
  for (int i = 0; i <= 400; ++i) {
    const double v = m(i / 100.0);
    CHECK(v >= prev - 1e-15);
    prev = v;
  }
  CHECK(m(2.0) == 1.0);
}

TEST_CASE("exact core integral") {
  // int_{B_r0} |x|^{-1} dx in R^3 = 4 pi r0^2 / 2.
  const double r0 = 1e-3, R = 1.0;
  const double v = std::exp(log_core_integral(3, r0, R, [&](double L) { return L - std::log(R); }));
  CHECK(v == doctest::Approx(2 * pi * r0 * r0).epsilon(1e-10));
}
