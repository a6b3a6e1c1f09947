#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "ineqlab/constants.hpp"
#include "ineqlab/grid.hpp"
#include "ineqlab/table.hpp"

namespace ineqlab {

enum class SweepKind {
  sobolev_decay,
  hardy_decay,
  lower_dim_coeff,
  logsob_coeff,
  improved_hardy_lhs,
  improved_sobolev_lhs,
  weight_limit,
};

/// Columns: parameter (delta or N), value, limit, gap_to_limit.
///
/// delta sweeps set p = N - delta. improved_*_lhs need u on a ball in
/// dimension params.N; the limit is the critical Hardy (a = 1, beta = N) or
/// Alvino left side of u. weight_limit compares the two boundary weights after
/// raising both to p/p*, on the nodes of `grid` (default: ball with
/// r_min = 1e-6 R) with r <= 0.9 R. An overflowed value is stored as +inf.
SweepTable sweep(SweepKind kind, const Params& params, const std::vector<double>& values,
                 const std::optional<RadialFn>& u = std::nullopt, const std::optional<RadialGrid>& grid = std::nullopt);

/// Default delta values 1e-1, 1e-2, ..., 1e-6.
std::vector<double> default_deltas();

/// Least-squares slope of ln(value) against ln(parameter) over the rows whose
/// parameter lies within a factor 10 of the smallest one.
double fit_decay_exponent(const SweepTable& table);

/// Ratio-test radius of sum_k alpha^k C^{Nk/(N-1)} (Nk/(N-1))^{k-1} / k!,
/// (N-1) / (N e C^{N/(N-1)}). Cross-checked against the term ratio at k = 1000.
double tm_series_radius(int N, double C_probe);
/// 1 / (a_{k+1} / a_k at alpha = 1), from log-Gamma.
double tm_series_ratio_radius(int N, double C_probe, int k);

std::string_view to_string(SweepKind kind);
std::optional<SweepKind> parse_sweep_kind(std::string_view name);

}  // namespace ineqlab
