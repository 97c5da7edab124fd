// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

namespace opalg {

struct RootSolve {
  double lo = 0.0;  ///< original bracket
  double hi = 0.0;
  double tolerance = 0.0;
  double root = 0.0;
  double residual = 0.0;  ///< f(root)
  int iterations = 0;
};

/// Bisection on a sign-changing bracket until hi - lo <= tol.
/// Throws InputError if f(lo) f(hi) >= 0 or tol is below the spacing of
/// doubles near the bracket.
RootSolve find_root(const std::function<double(double)>& f, double lo, double hi, double tol);

}  // namespace opalg
