#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "ineqlab/error.hpp"
#include "ineqlab/specfun.hpp"
#include "oracles.hpp"

using namespace ineqlab;
using std::numbers::pi;

static bool is_domain_error(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind() == ErrorKind::domain;
  }
  return false;
}

TEST_CASE("log_gamma reference values") {
  CHECK(specfun::log_gamma(0.5) == doctest::Approx(std::log(std::sqrt(pi))).epsilon(1e-14));
  CHECK(specfun::log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
  CHECK(specfun::log_gamma(1.5) == doctest::Approx(std::log(std::sqrt(pi) / 2)).epsilon(1e-14));
  CHECK(specfun::log_gamma(1.0) == 0.0);
  CHECK(std::abs(specfun::log_gamma(2.0)) < 1e-15);
}

TEST_CASE("log_gamma relative error against the 50-digit oracle") {
  double worst = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double t = 1e-3 * std::pow(1e7, i / 2000.0);
    const double ref = oracle::log_gamma(t);
    if (ref == 0.0) continue;
    worst = std::max(worst, std::abs(specfun::log_gamma(t) - ref) / std::abs(ref));
  }
  MESSAGE("worst relative error " << worst);
  CHECK(worst <= 1e-12);
}

TEST_CASE("log_gamma near its zeros keeps relative accuracy") {
  for (double t : {0.999, 1.001, 1.999, 2.001, 1.0 + 1e-6, 2.0 - 1e-6}) {
    const double ref = oracle::log_gamma(t);
    CHECK(std::abs(specfun::log_gamma(t) - ref) <= 1e-12 * std::abs(ref));
  }
}

TEST_CASE("log_gamma recurrence") {
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double t = 0.1 * std::pow(1e4, i / 999.0);
    worst = std::max(worst, std::abs(specfun::log_gamma(t + 1) - specfun::log_gamma(t) - std::log(t)));
  }
  CHECK(worst <= 1e-11);
}

TEST_CASE("gamma at half-integers") {
  double fact2n = 1.0, factn = 1.0;
  for (int n = 0; n <= 20; ++n) {
    if (n > 0) {
      fact2n *= (2.0 * n - 1) * (2.0 * n);
      factn *= n;
    }
    const double closed = fact2n * std::sqrt(pi) / (std::pow(4.0, n) * factn);
    CHECK(specfun::gamma(n + 0.5) == doctest::Approx(closed).epsilon(1e-10));
  }
}

TEST_CASE("sphere areas") {
  CHECK(specfun::sphere_area(2) == doctest::Approx(2 * pi).epsilon(1e-14));
  CHECK(specfun::sphere_area(3) == doctest::Approx(4 * pi).epsilon(1e-14));
  CHECK(specfun::sphere_area(4) == doctest::Approx(2 * pi * pi).epsilon(1e-14));
  CHECK(specfun::sphere_area(1) == doctest::Approx(2.0).epsilon(1e-14));
  for (int N = 1; N <= 60; ++N)
    CHECK(specfun::sphere_area(N) == doctest::Approx(static_cast<double>(oracle::sphere_area(N))).epsilon(1e-12));
  CHECK(is_domain_error([] { specfun::sphere_area(0); }));
}

TEST_CASE("stirling ratio") {
  CHECK(specfun::stirling_ratio(1.0) == doctest::Approx(oracle::stirling_ratio(1.0)).epsilon(1e-12));
  CHECK(specfun::stirling_ratio(1.0) == doctest::Approx(1.0844375).epsilon(1e-7));
  CHECK(std::abs(specfun::stirling_ratio(100.0) - 1.0) <= 1e-3);
  CHECK(std::abs(oracle::stirling_ratio(100.0) - 1.0) <= 1e-3);
  CHECK(std::abs(specfun::stirling_ratio(1e4) - 1.0) <= 1e-5);
  // ln Gamma(1e4) ~ 8e4, so its relative accuracy bounds the ratio only to ~1e-10.
  CHECK(specfun::stirling_ratio(1e4) == doctest::Approx(oracle::stirling_ratio(1e4)).epsilon(1e-9));
  double prev = specfun::stirling_ratio(1.0);
  for (int i = 1; i <= 400; ++i) {
    const double t = std::pow(1e4, i / 400.0);
    const double v = specfun::stirling_ratio(t);
    CHECK(v < prev);
    CHECK(v > 1.0);
    prev = v;
  }
}

TEST_CASE("invalid arguments raise domain errors") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(is_domain_error([] { specfun::log_gamma(0.0); }));
  CHECK(is_domain_error([] { specfun::log_gamma(-1.5); }));
  CHECK(is_domain_error([&] { specfun::log_gamma(inf); }));
  CHECK(is_domain_error([] { specfun::log_gamma(std::nan("")); }));
  CHECK(is_domain_error([&] { specfun::stirling_ratio(inf); }));
  CHECK(is_domain_error([] { specfun::stirling_ratio(0.0); }));
}
