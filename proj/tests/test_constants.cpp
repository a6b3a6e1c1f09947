#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "ineqlab/constants.hpp"
#include "oracles.hpp"

using namespace ineqlab;
using testing::throws_kind;
using std::numbers::pi;

static Params make(int N, double p) {
  Params P;
  P.N = N;
  P.p = p;
  return P;
}

TEST_CASE("reference constants") {
  CHECK(constant(ConstantKind::hardy, make(3, 2)) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(constant(ConstantKind::critical_exponent, make(3, 2)) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(constant(ConstantKind::moser_alpha, make(2, 2)) == doctest::Approx(4 * pi).epsilon(1e-14));
  CHECK(constant(ConstantKind::critical_hardy, make(2, 2)) == doctest::Approx(0.25).epsilon(1e-15));
  Params L = make(3, 2);
  L.n = 1;
  CHECK(constant(ConstantKind::logsob, L) == doctest::Approx(2 / (pi * std::exp(1.0))).epsilon(1e-14));
  CHECK(constant(ConstantKind::logsob, L) == doctest::Approx(0.2341990).epsilon(1e-6));
}

TEST_CASE("Sobolev constant against two independent closed forms") {
  const double s = constant(ConstantKind::sobolev, make(3, 2));
  const double closed = static_cast<double>(3 * pow(oracle::pi() / 2, oracle::mp(4) / 3));
  const double gamma_form = static_cast<double>(oracle::sobolev(3, 2));
  CHECK(std::abs(s - closed) <= 1e-10 * closed);
  CHECK(std::abs(s - gamma_form) <= 1e-10 * closed);
  CHECK(s == doctest::Approx(5.478).epsilon(1e-3));
  for (int N : {2, 3, 4, 7, 20}) {
    for (double p : {1.0, 1.25, 1.5, 1.9}) {
      if (p >= N) continue;
      const double ref = static_cast<double>(oracle::sobolev(N, p == 1.0 ? 1.0 + 1e-30 : p));
      CHECK(constant(ConstantKind::sobolev, make(N, p)) == doctest::Approx(ref).epsilon(1e-11));
    }
  }
}

TEST_CASE("moser_alpha in higher dimension") {
  const double w2 = static_cast<double>(oracle::sphere_area(3));
  CHECK(constant(ConstantKind::moser_alpha, make(3, 3)) == doctest::Approx(3 * std::sqrt(w2)).epsilon(1e-13));
}

TEST_CASE("lower-dimensional coefficient") {
  for (int N : {4, 10, 100, 10000}) {
    Params P = make(N, 2);
    P.m = 3;
    CHECK(constant(ConstantKind::lower_dim_coeff, P) == doctest::Approx(oracle::lower_dim_coeff(N, 3, 2)).epsilon(1e-10));
  }
  // m = N reduces to the Sobolev constant.
  Params P = make(3, 2);
  P.m = 3;
  CHECK(constant(ConstantKind::lower_dim_coeff, P) == doctest::Approx(constant(ConstantKind::sobolev, P)).epsilon(1e-13));
  auto gap = [](int N) {
    Params Q = make(N, 2);
    Q.m = 3;
    return std::abs(constant(ConstantKind::lower_dim_coeff, Q) - 0.25);
  };
  CHECK(gap(10000) < gap(100));
}

TEST_CASE("Hardy constant decreases to zero as p approaches N") {
  double prev = constant(ConstantKind::hardy, make(3, 2.5));
  for (int k = 1; k <= 6; ++k) {
    const double v = constant(ConstantKind::hardy, make(3, 3 - std::pow(10.0, -k)));
    CHECK(v < prev);
    CHECK(v > 0.0);
    prev = v;
  }
  CHECK(prev < 1e-17);
}

TEST_CASE("Sobolev constant scaled by (N - p)^(p - 1) stays in a bounded band") {
  for (int N : {2, 3, 4}) {
    double lo = 1e300, hi = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double delta = 0.5 * std::pow(2e-6, i / 200.0);
      const double p = N - delta;
      const double v = constant(ConstantKind::sobolev, make(N, p)) / std::pow(delta, p - 1);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    MESSAGE("N = " << N << " band [" << lo << ", " << hi << "]");
    CHECK(lo > 0.0);
    CHECK(std::isfinite(hi));
    CHECK(hi / lo < 10.0);
  }
}

TEST_CASE("domain errors") {
  CHECK(throws_kind([] { constant(ConstantKind::hardy, make(3, 3)); }, ErrorKind::domain));
  CHECK(throws_kind([] { constant(ConstantKind::sobolev, make(3, 3.5)); }, ErrorKind::domain));
  CHECK(throws_kind([] { constant(ConstantKind::sobolev, make(3, 0.5)); }, ErrorKind::domain));
  CHECK(throws_kind([] { constant(ConstantKind::logsob, make(3, 2)); }, ErrorKind::domain));
  CHECK(throws_kind([] { constant(ConstantKind::lower_dim_coeff, make(5, 2)); }, ErrorKind::domain));
  Params P = make(3, 2);
  P.m = 2;
  CHECK(throws_kind([&] { constant(ConstantKind::lower_dim_coeff, P); }, ErrorKind::domain));
  P.m = 4;
  CHECK(throws_kind([&] { constant(ConstantKind::lower_dim_coeff, P); }, ErrorKind::domain));
}

TEST_CASE("kind names round trip") {
  for (auto k : {ConstantKind::hardy, ConstantKind::sobolev, ConstantKind::critical_exponent, ConstantKind::critical_hardy,
                 ConstantKind::moser_alpha, ConstantKind::logsob, ConstantKind::lower_dim_coeff})
    CHECK(parse_constant_kind(to_string(k)) == k);
  CHECK_FALSE(parse_constant_kind("nope"));
}
