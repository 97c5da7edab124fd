// SPDX-License-Identifier: Apache-2.0
#include "opalg/numkit/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "opalg/errors.hpp"

namespace opalg {

RootSolve find_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(lo < hi)) throw InputError("find_root: bracket must satisfy lo < hi");
  const double resolution =
      2.0 * std::numeric_limits<double>::epsilon() * std::max({std::abs(lo), std::abs(hi), 1e-300});
  if (!(tol >= resolution)) throw InputError("find_root: tolerance below machine resolution");

  double flo = f(lo);
  const double fhi = f(hi);
  if (!(flo * fhi < 0.0)) throw InputError("find_root: f has no sign change on the bracket");

  RootSolve out{lo, hi, tol, 0.0, 0.0, 0};
  double a = lo, b = hi;
  while (b - a > tol) {
    const double mid = a + 0.5 * (b - a);
    if (mid <= a || mid >= b) break;
    const double fm = f(mid);
    ++out.iterations;
    if (fm == 0.0) {
      a = b = mid;
      break;
    }
    if ((fm < 0.0) == (flo < 0.0)) {
      a = mid;
      flo = fm;
    } else {
      b = mid;
    }
  }
  out.root = a + 0.5 * (b - a);
  out.residual = f(out.root);
  return out;
}

}  // namespace opalg
