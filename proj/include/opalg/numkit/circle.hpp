// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "opalg/numkit/complex_matrix.hpp"

namespace opalg {

/// The M-th roots of unity, lambda_m = exp(2 pi i m / M).
///
/// Powers lambda_m^k are looked up by index (m k mod M), so they are exact
/// table entries rather than accumulated products. Nodes at multiples of a
/// quarter turn are exactly 1, i, -1, -i.
class CircleGrid {
 public:
  explicit CircleGrid(std::size_t node_count);

  /// Alias-free grid for N x N band extraction: M = 2N.
  static CircleGrid for_dimension(std::size_t n) { return CircleGrid(2 * n); }

  std::size_t size() const noexcept { return roots_.size(); }
  cplx node(std::size_t m) const noexcept { return roots_[m % roots_.size()]; }
  /// lambda_m^k for any integer k.
  cplx power(std::size_t m, long long k) const noexcept;

 private:
  std::vector<cplx> roots_;
};

/// (1/M) sum_m values[m] * lambda_m^{-k}: trapezoidal rule for the circle
/// integral of a matrix-valued function sampled on the grid. Exact when every
/// entry is a trigonometric polynomial of degree < M in lambda.
ComplexMatrix circle_integral(const CircleGrid& grid, std::span<const ComplexMatrix> values, long long k);

}  // namespace opalg
