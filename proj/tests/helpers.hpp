#pragma once

#include <functional>
#include <vector>

#include "ineqlab/error.hpp"
#include "ineqlab/grid.hpp"

namespace testing {

inline ineqlab::RadialFn sample(const ineqlab::RadialGrid& g, ineqlab::Domain d, const std::function<double(double)>& f) {
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = f(g[i]);
  return ineqlab::RadialFn(g, std::move(v), d);
}

inline ineqlab::RadialFn on_ball(int N, double R, const std::function<double(double)>& f,
                                 std::size_t count = ineqlab::RadialGrid::kDefaultCount) {
  return sample(ineqlab::RadialGrid::ball(N, R, count), ineqlab::Domain::ball(R), f);
}

template <class F>
bool throws_kind(F&& f, ineqlab::ErrorKind kind) {
  try {
    f();
  } catch (const ineqlab::Error& e) {
    return e.kind() == kind;
  }
  return false;
}

}  // namespace testing
