#include "ineqlab/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "ineqlab/error.hpp"

namespace ineqlab::specfun {
namespace {

constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kHalfLog2Pi = 0.91893853320467274178;

// zeta(k) - 1 for k = 2..10; higher orders are summed directly.
constexpr std::array<double, 9> kZetaMinusOneLow = {
    0.64493406684822643647, 0.20205690315959428540, 0.08232323371113819152,
    0.03692775514336992633, 0.01734306198444913971, 0.00834927738192282684,
    0.00407735619794433938, 0.00200839282608221442, 0.00099457512781808534,
};

constexpr int kSeriesTerms = 60;

struct ZetaTable {
  std::array<double, kSeriesTerms + 1> zm1{};
  ZetaTable() {
    for (int k = 2; k <= kSeriesTerms; ++k) {
      if (k <= 10) {
        zm1[k] = kZetaMinusOneLow[k - 2];
        continue;
      }
      double s = 0.0;
      for (int n = 64; n >= 2; --n) s += std::pow(static_cast<double>(n), -k);
      zm1[k] = s;
    }
  }
};

const ZetaTable& zeta_table() {
  static const ZetaTable table;
  return table;
}

// ln Gamma(1 + z) for |z| <= 0.5:
//   -log1p(z) + z (1 - gamma) + sum_{k>=2} (-1)^k (zeta(k) - 1) z^k / k
double log_gamma_1p(double z) {
  const auto& zt = zeta_table().zm1;
  double sum = 0.0;
  double zk = -z;
  for (int k = 2; k <= kSeriesTerms; ++k) {
    zk *= -z;  // (-z)^k
    const double term = zt[k] * zk / k;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return -std::log1p(z) + z * (1.0 - kEulerGamma) + sum;
}

// Godfrey's Lanczos coefficients, g = 607/128, n = 15.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5,
};

double log_gamma_lanczos(double x) {
  const double z = x - 1.0;
  double a = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) a += kLanczos[k] / (z + static_cast<double>(k));
  const double t = z + kLanczosG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace

double log_gamma(double t) {
  if (!std::isfinite(t) || t <= 0.0) fail(ErrorKind::domain, "log_gamma: argument must be finite and positive, got " + std::to_string(t));
  if (t < 0.5) {
    // Gamma(t) Gamma(1 - t) = pi / sin(pi t), and 1 - t lands in (0.5, 1].
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * t)) - log_gamma_1p(-t);
  }
  if (t <= 1.5) return log_gamma_1p(t - 1.0);
  if (t <= 2.5) return std::log1p(t - 2.0) + log_gamma_1p(t - 2.0);
  return log_gamma_lanczos(t);
}

double gamma(double t) { return std::exp(log_gamma(t)); }

double log_sphere_area(double N) {
  if (!(N >= 1.0) || !std::isfinite(N)) fail(ErrorKind::domain, "sphere_area: dimension must be >= 1");
  return std::log(N) + 0.5 * N * std::log(std::numbers::pi) - log_gamma(1.0 + 0.5 * N);
}

double sphere_area(int N) {
  if (N < 1) fail(ErrorKind::domain, "sphere_area: dimension must be >= 1, got " + std::to_string(N));
  return std::exp(log_sphere_area(N));
}

double stirling_ratio(double t) {
  if (!std::isfinite(t) || t <= 0.0) fail(ErrorKind::domain, "stirling_ratio: argument must be finite and positive");
  return std::exp(log_gamma(t) - (kHalfLog2Pi + (t - 0.5) * std::log(t) - t));
}

}  // namespace ineqlab::specfun
