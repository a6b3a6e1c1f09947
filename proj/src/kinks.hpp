#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ineqlab/grid.hpp"

namespace ineqlab::detail {

// Cells (c, c + 1) holding a jump of the derivative: the two second
// differences touching the cell dominate their neighbours by a wide margin.
std::vector<std::size_t> kink_cells(std::span<const double> v);

// Evaluates u at r like RadialFn::at, except that in and next to a kink cell
// the value comes from one-sided cubics, so the corner is not rounded off.
class KinkSampler {
 public:
  explicit KinkSampler(const RadialFn& u);
  double operator()(double r) const;

 private:
  const RadialFn& u_;
  std::vector<std::size_t> kinks_;
};

}  // namespace ineqlab::detail
