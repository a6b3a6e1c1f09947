#pragma once

#include <array>
#include <limits>
#include <vector>

#include "ineqlab/grid.hpp"

namespace ineqlab {

/// Decreasing rearrangement u* as a piecewise-linear function of the measure
/// t. A jump shows up as two samples sharing the same t.
struct RearrangedFn {
  std::vector<double> t;       // nondecreasing, t[0] >= 0
  std::vector<double> values;  // nonincreasing, >= 0
  double measure = 0.0;        // |Omega|, +inf on the whole space
  double t_floor = 0.0;        // measure of the innermost grid ball B_{r_min}

  double at(double t) const;
};

/// Lorentz-Zygmund index (p, q, r); p or q may be +inf.
struct LZIndex {
  double p = 2.0;
  double q = 2.0;
  double r = 0.0;
};

constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// u*(t) = inf{tau : |{|u| > tau}| <= t}, from a full level-set scan with
/// linear crossings in r between nodes.
RearrangedFn decreasing_rearrangement(const RadialFn& u);

/// Quasi-norm of L^{p,q}(log L)^r; +inf when the defining integral diverges.
double lz_quasinorm(const RadialFn& u, const LZIndex& idx, double omega_measure);
double lz_quasinorm(const RearrangedFn& ustar, const LZIndex& idx, double omega_measure);

struct ChainRecord {
  std::array<LZIndex, 3> spaces;
  std::array<double, 3> norms;
  std::array<bool, 3> finite;
  bool monotone = true;  // once finite, finite for the rest of the chain
};

/// L^{inf,N}(log L)^{-1} -> L^{inf,q}(log L)^{-1+1/N-1/q} -> L^{inf,inf}(log L)^{-1+1/N}.
ChainRecord embedding_chain_check(const RadialFn& u, double q);

}  // namespace ineqlab
