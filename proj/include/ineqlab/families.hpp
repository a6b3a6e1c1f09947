#pragma once

#include <optional>
#include <string_view>

#include "ineqlab/constants.hpp"
#include "ineqlab/grid.hpp"

namespace ineqlab {

enum class FamilyKind { cone, talenti_bubble, moser_seq, hardy_seq, log_power, gaussian };

/// A built-in test profile. `param` is k, epsilon, theta or sigma depending on
/// the kind; cone and talenti_bubble ignore it.
struct FamilySpec {
  FamilyKind kind = FamilyKind::cone;
  double param = 0.0;
};

/// Sample a family on `grid`. The dimension is grid.dim(); params.R is the
/// support radius of compactly supported profiles and params.p enters
/// talenti_bubble and hardy_seq. Compact profiles live on ball(grid.r_max())
/// unless a whole-space domain is requested.
RadialFn test_family(const FamilySpec& spec, const Params& params, const RadialGrid& grid,
                     std::optional<Domain> domain = std::nullopt);

/// Quintic smoothstep 6t^5 - 15t^4 + 10t^3 clamped to [0, 1].
double smoothstep5(double t);
/// Cutoff equal to 1 on [0, R/2] and falling smoothly to 0 at R.
double cutoff(double r, double R);

/// Default parameter per kind (k = 100, epsilon = 0.1, theta = 0.5, sigma = 1).
double default_family_param(FamilyKind kind);
bool family_is_compact(FamilyKind kind);

std::string_view to_string(FamilyKind kind);
std::optional<FamilyKind> parse_family_kind(std::string_view name);

}  // namespace ineqlab
