// SPDX-License-Identifier: Apache-2.0
#include "opalg/numkit/operator_norm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "opalg/errors.hpp"
#include "opalg/numkit/simd.hpp"

namespace opalg {
namespace {

std::vector<cplx> random_unit_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cplx> x(n);
  for (auto& z : x) {
    const double re = gauss(rng);
    z = {re, gauss(rng)};
  }
  const double nx = norm2(x);
  simd::active().scale(1.0 / nx, x.data(), n);
  return x;
}

double single_run(const ComplexMatrix& a, double tol, std::uint64_t seed, std::size_t cap) {
  const std::size_t n = a.dim();
  const auto& k = simd::active();
  std::vector<cplx> x = random_unit_vector(n, seed);
  double sigma = 0.0;
  for (std::size_t it = 0; it < cap; ++it) {
    const std::vector<cplx> y = a.apply(x);
    const double next = norm2(y);
    if (next == 0.0) return 0.0;  // start landed in the kernel
    std::vector<cplx> z = a.apply_adjoint(y);
    const double nz = norm2(z);
    k.scale(1.0 / nz, z.data(), n);
    x = std::move(z);
    const bool done = std::abs(next - sigma) <= tol * next;
    sigma = next;
    if (done) return std::max(sigma, norm2(a.apply(x)));
  }
  throw NumericError("operator_norm: power iteration did not converge within " + std::to_string(cap) + " iterations",
                     sigma);
}

}  // namespace

double min_norm_tolerance(std::size_t n) noexcept {
  return std::numeric_limits<double>::epsilon() * static_cast<double>(std::max<std::size_t>(n, 1));
}

double default_norm_tolerance(std::size_t n) noexcept {
  return std::max(1e-13, 2.0 * min_norm_tolerance(n));
}

double operator_norm(const ComplexMatrix& a, double tol, unsigned restarts, std::size_t max_iterations) {
  if (a.dim() == 0) return 0.0;
  if (!a.all_finite()) throw InputError("operator_norm: matrix has non-finite entries");
  if (!(tol >= min_norm_tolerance(a.dim())))
    throw InputError("operator_norm: tolerance below machine resolution for this dimension");
  if (restarts == 0) throw InputError("operator_norm: restarts must be positive");
  if (max_iterations == 0) throw InputError("operator_norm: iteration cap must be positive");
  if (a.is_zero()) return 0.0;
  double best = 0.0;
  for (unsigned r = 0; r < restarts; ++r) best = std::max(best, single_run(a, tol, r + 1, max_iterations));
  return best;
}

double operator_norm(const ComplexMatrix& a) {
  return operator_norm(a, default_norm_tolerance(a.dim()), kDefaultNormRestarts);
}

}  // namespace opalg
