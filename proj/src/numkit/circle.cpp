// SPDX-License-Identifier: Apache-2.0
#include "opalg/numkit/circle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "opalg/errors.hpp"

namespace opalg {

CircleGrid::CircleGrid(std::size_t node_count) {
  if (node_count == 0) throw InputError("CircleGrid: node count must be positive");
  roots_.resize(node_count);
  const auto M = static_cast<long long>(node_count);
  // Upper half mirrors the lower half so that lambda^{-1} == conj(lambda) exactly.
  for (long long m = 0; m < M; ++m) {
    if (2 * m > M) {
      roots_[m] = std::conj(roots_[M - m]);
      continue;
    }
    if ((4 * m) % M == 0) {
      static constexpr cplx quarter[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
      roots_[m] = quarter[(4 * m) / M];
      continue;
    }
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(M);
    roots_[m] = {std::cos(theta), std::sin(theta)};
  }
}

cplx CircleGrid::power(std::size_t m, long long k) const noexcept {
  const auto M = static_cast<long long>(roots_.size());
  long long idx = (static_cast<long long>(m % roots_.size()) * (k % M)) % M;
  if (idx < 0) idx += M;
  return roots_[static_cast<std::size_t>(idx)];
}

ComplexMatrix circle_integral(const CircleGrid& grid, std::span<const ComplexMatrix> values, long long k) {
  if (values.size() != grid.size())
    throw InputError("circle_integral: expected " + std::to_string(grid.size()) + " samples, got " +
                     std::to_string(values.size()));
  const std::size_t n = values.front().dim();
  ComplexMatrix acc(n);
  for (std::size_t m = 0; m < values.size(); ++m) {
    if (values[m].dim() != n) throw InputError("circle_integral: samples differ in dimension");
    acc.add_scaled(grid.power(m, -k), values[m]);
  }
  acc *= 1.0 / static_cast<double>(grid.size());
  return acc;
}

}  // namespace opalg
