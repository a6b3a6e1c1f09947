#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "helpers.hpp"
#include "ineqlab/families.hpp"
#include "ineqlab/functionals.hpp"
#include "ineqlab/rearrange.hpp"
#include "ineqlab/specfun.hpp"

using namespace ineqlab;
using testing::on_ball;
using testing::throws_kind;
using std::numbers::pi;

namespace {

Params make(int N, double p) {
  Params P;
  P.N = N;
  P.p = p;
  return P;
}

std::vector<std::pair<std::string, RadialFn>> ball_members(int N) {
  const RadialGrid g = RadialGrid::ball(N, 1.0);
  const Params P = make(N, 1.5);
  return {{"cone", test_family({FamilyKind::cone, 0}, P, g)},
          {"moser_seq", test_family({FamilyKind::moser_seq, 20}, P, g)},
          {"log_power", test_family({FamilyKind::log_power, (N - 1.0) / N}, P, g)},
          {"hardy_seq", test_family({FamilyKind::hardy_seq, 0.2}, P, g)}};
}

void check_nonincreasing(const RearrangedFn& u) {
  for (std::size_t i = 1; i < u.t.size(); ++i) {
    CHECK(u.t[i] >= u.t[i - 1]);
    CHECK(u.values[i] <= u.values[i - 1]);
  }
  for (double v : u.values) CHECK(v >= 0.0);
}

}  // namespace

TEST_CASE("rearrangement of a plateau is a step") {
  const RadialFn one = on_ball(2, 1.0, [](double) { return 1.0; });
  const RearrangedFn s = decreasing_rearrangement(one);
  check_nonincreasing(s);
  CHECK(s.measure == doctest::Approx(pi).epsilon(1e-14));
  CHECK(s.at(0.5) == 1.0);
  CHECK(s.at(pi - 1e-6) == 1.0);
  CHECK(s.at(pi + 1e-6) == 0.0);
  for (double p : {1.0, 2.0, 3.5}) CHECK(lz_quasinorm(s, {p, p, 0.0}, pi) == doctest::Approx(std::pow(pi, 1 / p)).epsilon(1e-8));
}

TEST_CASE("rearrangement of the cone") {
  const RadialFn cone = on_ball(2, 1.0, [](double r) { return 1 - r; });
  const RearrangedFn s = decreasing_rearrangement(cone);
  check_nonincreasing(s);
  CHECK(std::abs(s.at(pi / 4) - 0.5) <= 1e-4);
  double worst = 0.0;
  for (int i = 1; i < 1000; ++i) {
    const double t = pi * i / 1000.0;
    worst = std::max(worst, std::abs(s.at(t) - (1 - std::sqrt(t / pi))));
  }
  CHECK(worst <= 1e-4);
}

TEST_CASE("radial nonincreasing profiles are their own rearrangement") {
  for (int N : {2, 3}) {
    const RadialFn u = on_ball(N, 1.0, [](double r) { return std::exp(-3 * r) - std::exp(-3.0); });
    const RearrangedFn s = decreasing_rearrangement(u);
    const double w = specfun::sphere_area(N);
    double worst = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double r = u.grid()[i];
      worst = std::max(worst, std::abs(s.at(w * std::pow(r, N) / N) - u[i]));
    }
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("rearrangement of a nonmonotone profile") {
  // Ring bump on B_1 in R^2: sup 1 at r = 1/2, level set {u > tau} an annulus.
  const RadialFn ring = on_ball(2, 1.0, [](double r) { return 1 - 4 * (r - 0.5) * (r - 0.5); });
  const RearrangedFn s = decreasing_rearrangement(ring);
  check_nonincreasing(s);
  for (double tau : {0.2, 0.5, 0.9}) {
    const double half = 0.5 * std::sqrt(1 - tau);  // u > tau on |r - 1/2| < half
    const double mu = pi * (std::pow(0.5 + half, 2) - std::pow(0.5 - half, 2));
    CHECK(s.at(mu) == doctest::Approx(tau).epsilon(1e-4));
  }
}

TEST_CASE("Lorentz L^{p,p} equals L^p across the family") {
  for (int N : {2, 3}) {
    const double vol = specfun::sphere_area(N) / N;
    for (const auto& [name, u] : ball_members(N)) {
      if (name == "hardy_seq") continue;
      for (double p : {1.0, 2.0, static_cast<double>(N)}) {
        INFO(name << " N " << N << " p " << p);
        const double lp = lq_norm(u, p);
        CHECK(lz_quasinorm(u, {p, p, 0.0}, vol) == doctest::Approx(lp).epsilon(1e-4));
      }
    }
  }
}

TEST_CASE("Lorentz-Zygmund examples") {
  const RadialGrid g = RadialGrid::ball(2, 1.0);
  const RadialFn lp = test_family({FamilyKind::log_power, 0.5}, make(2, 2), g);
  const double v = lz_quasinorm(lp, {kInfinity, kInfinity, -0.5}, pi);
  CHECK(std::isfinite(v));
  CHECK(v > 0.0);
  // On the grid the sup norm is the value at r_min.
  CHECK(lz_quasinorm(lp, {kInfinity, kInfinity, 0.0}, pi) == doctest::Approx(lp[0]).epsilon(1e-12));
  CHECK(throws_kind([&] { lz_quasinorm(lp, {2.0, 0.5, 0.0}, pi); }, ErrorKind::domain));
}

TEST_CASE("embedding chain") {
  const ChainRecord cone = embedding_chain_check(on_ball(2, 1.0, [](double r) { return 1 - r; }), 4.0);
  for (int i = 0; i < 3; ++i) CHECK(cone.finite[i]);
  CHECK(cone.monotone);

  const RadialGrid g = RadialGrid::ball(2, 1.0);
  const RadialFn lp = test_family({FamilyKind::log_power, 0.5}, make(2, 2), g);
  // theta = (N-1)/N: with sigma = ln s the first two integrands behave like
  // d sigma / |sigma|, so only the last space holds u.
  const ChainRecord c = embedding_chain_check(lp, 4.0);
  MESSAGE("log_power(1/2) chain " << c.norms[0] << " " << c.norms[1] << " " << c.norms[2]);
  CHECK_FALSE(c.finite[0]);
  CHECK_FALSE(c.finite[1]);
  CHECK(c.finite[2]);
  CHECK(c.monotone);
  // Just below the threshold all three are finite and the first is the largest.
  const RadialFn lp4 = test_family({FamilyKind::log_power, 0.4}, make(2, 2), g);
  const ChainRecord c4 = embedding_chain_check(lp4, 4.0);
  MESSAGE("log_power(0.4) chain " << c4.norms[0] << " " << c4.norms[1] << " " << c4.norms[2]);
  for (int i = 0; i < 3; ++i) CHECK(c4.finite[i]);
  CHECK(c4.norms[0] >= c4.norms[1]);
  CHECK(c4.norms[0] >= c4.norms[2]);

  const ChainRecord z = embedding_chain_check(on_ball(2, 1.0, [](double) { return 0.0; }), 4.0);
  for (int i = 0; i < 3; ++i) CHECK(z.norms[i] == 0.0);

  for (int N : {2, 3})
    for (const auto& [name, u] : ball_members(N)) {
      const ChainRecord r = embedding_chain_check(u, 2.0 * N);
      INFO(name << " N " << N);
      CHECK(r.monotone);
      bool seen = false;
      for (int i = 0; i < 3; ++i) {
        if (seen) CHECK(r.finite[i]);
        seen = seen || r.finite[i];
      }
      check_nonincreasing(decreasing_rearrangement(u));
    }
}
