#include "ineqlab/families.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include "ineqlab/error.hpp"
#include "ineqlab/specfun.hpp"

namespace ineqlab {
namespace {

constexpr std::array<std::pair<FamilyKind, std::string_view>, 6> kNames = {{
    {FamilyKind::cone, "cone"},
    {FamilyKind::talenti_bubble, "talenti_bubble"},
    {FamilyKind::moser_seq, "moser_seq"},
    {FamilyKind::hardy_seq, "hardy_seq"},
    {FamilyKind::log_power, "log_power"},
    {FamilyKind::gaussian, "gaussian"},
}};

}  // namespace

double smoothstep5(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double cutoff(double r, double R) { return 1.0 - smoothstep5((r - 0.5 * R) / (0.5 * R)); }

double default_family_param(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::moser_seq: return 100.0;
    case FamilyKind::hardy_seq: return 0.1;
    case FamilyKind::log_power: return 0.5;
    case FamilyKind::gaussian: return 1.0;
    default: return 0.0;
  }
}

bool family_is_compact(FamilyKind kind) { return kind != FamilyKind::talenti_bubble && kind != FamilyKind::gaussian; }

RadialFn test_family(const FamilySpec& spec, const Params& P, const RadialGrid& grid, std::optional<Domain> domain) {
  const double N = grid.dim();
  const double R = P.R;
  const double x = spec.param;
  const bool compact = family_is_compact(spec.kind);
  if (compact) require(R > 0.0 && R <= grid.r_max() * (1.0 + 1e-12), "family support radius must lie inside the grid");
  const Domain dom = domain.value_or(compact ? Domain::ball(grid.r_max()) : Domain::whole_space());
  if (!compact) require(!dom.is_ball(), "talenti_bubble and gaussian live on the whole space");

  const std::size_t n = grid.size();
  std::vector<double> v(n, 0.0);
  switch (spec.kind) {
    case FamilyKind::cone:
      for (std::size_t i = 0; i < n; ++i) v[i] = std::max(0.0, 1.0 - grid[i] / R);
      break;
    case FamilyKind::talenti_bubble: {
      require(P.p > 1.0 && P.p < N, "talenti_bubble needs 1 < p < N");
      const double e1 = P.p / (P.p - 1.0), e2 = -(N - P.p) / P.p;
      for (std::size_t i = 0; i < n; ++i) v[i] = std::exp(e2 * std::log1p(std::pow(grid[i], e1)));
      break;
    }
    case FamilyKind::moser_seq: {
      require(x >= 2.0, "moser_seq needs k >= 2");
      const double Lk = std::log(x);
      const double c = std::exp(-specfun::log_sphere_area(N) / N);
      for (std::size_t i = 0; i < n; ++i) {
        const double r = grid[i];
        if (r <= R / x) v[i] = c * std::pow(Lk, (N - 1.0) / N);
        else if (r < R) v[i] = c * std::log(R / r) / std::pow(Lk, 1.0 / N);
      }
      break;
    }
    case FamilyKind::hardy_seq: {
      require(P.p >= 1.0 && P.p < N, "hardy_seq needs 1 <= p < N");
      const double top = (N - P.p) / P.p;
      require(x > 0.0 && x < top, "hardy_seq needs 0 < epsilon < (N-p)/p");
      for (std::size_t i = 0; i < n; ++i)
        if (grid[i] < R) v[i] = std::pow(grid[i], -top + x) * cutoff(grid[i], R);
      break;
    }
    case FamilyKind::log_power:
      require(x > 0.0, "log_power needs theta > 0");
      for (std::size_t i = 0; i < n; ++i)
        if (grid[i] < R) v[i] = std::pow(std::log(R / grid[i]), x) * cutoff(grid[i], R);
      break;
    case FamilyKind::gaussian: {
      require(x > 0.0, "gaussian needs sigma > 0");
      for (std::size_t i = 0; i < n; ++i) v[i] = std::exp(-grid[i] * grid[i] / (4.0 * x * x));
      std::vector<double> sq(n);
      for (std::size_t i = 0; i < n; ++i) sq[i] = v[i] * v[i];
      const double mass = integrate_dx(grid, dom, sq).value;
      const double c = 1.0 / std::sqrt(mass);
      for (double& y : v) y *= c;
      break;
    }
  }
  if (dom.is_ball() && R >= grid.r_max() * (1.0 - 1e-12)) v.back() = 0.0;
  return RadialFn(grid, std::move(v), dom);
}

std::string_view to_string(FamilyKind kind) {
  for (const auto& [k, name] : kNames)
    if (k == kind) return name;
  return "?";
}

std::optional<FamilyKind> parse_family_kind(std::string_view name) {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  return std::nullopt;
}

}  // namespace ineqlab
