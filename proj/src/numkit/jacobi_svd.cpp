// SPDX-License-Identifier: Apache-2.0
#include "opalg/numkit/jacobi_svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "opalg/errors.hpp"
#include "opalg/numkit/simd.hpp"

namespace opalg {
namespace {

constexpr int kMaxSweeps = 60;

// Rotate columns p, q of a column-major n x n block so that they become
// orthogonal. Returns true if a rotation was applied.
bool rotate_pair(std::vector<cplx>& cols, std::vector<cplx>& v, std::size_t n, std::size_t p,
                 std::size_t q, double tol) {
  const auto& k = simd::active();
  cplx* ap = cols.data() + p * n;
  cplx* aq = cols.data() + q * n;
  const double alpha = k.norm_sq(ap, n);
  const double beta = k.norm_sq(aq, n);
  if (alpha == 0.0 || beta == 0.0) return false;
  const cplx gamma = k.dotc(ap, aq, n);
  const double g = std::abs(gamma);
  if (g <= tol * std::sqrt(alpha * beta)) return false;

  // Remove the phase of gamma, then apply the real Jacobi rotation.
  const cplx phase = std::conj(gamma) / g;  // e^{-i arg gamma}
  const double zeta = (beta - alpha) / (2.0 * g);
  const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = c * t;

  auto apply = [&](cplx* xp, cplx* xq) {
    std::vector<cplx> old_p(xp, xp + n);
    k.scale(c, xp, n);
    k.axpy(-s * phase, xq, xp, n);
    k.scale(c * phase, xq, n);
    k.axpy(s, old_p.data(), xq, n);
  };
  apply(ap, aq);
  apply(v.data() + p * n, v.data() + q * n);
  return true;
}

}  // namespace

SvdResult jacobi_svd(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  if (n > kSvdOracleMaxDim)
    throw InputError("jacobi_svd: dimension " + std::to_string(n) + " exceeds the oracle guard of " +
                     std::to_string(kSvdOracleMaxDim));
  if (!a.all_finite()) throw InputError("jacobi_svd: matrix has non-finite entries");

  // Column-major working copies of A and V = I.
  std::vector<cplx> cols(n * n), v(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cols[j * n + i] = a(i, j);
  for (std::size_t j = 0; j < n; ++j) v[j * n + j] = 1.0;

  const double tol = std::max(1e-15, static_cast<double>(n) * std::numeric_limits<double>::epsilon());
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotated |= rotate_pair(cols, v, n, p, q, tol);
    if (!rotated) break;
  }
  if (sweep == kMaxSweeps) {
    double largest = 0.0;
    for (std::size_t j = 0; j < n; ++j) largest = std::max(largest, norm2({cols.data() + j * n, n}));
    throw NumericError("jacobi_svd: no convergence after " + std::to_string(kMaxSweeps) + " sweeps",
                       largest);
  }

  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) sv[j] = norm2({cols.data() + j * n, n});
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sv[x] > sv[y]; });

  SvdResult out;
  out.sweeps = sweep + 1;
  out.singular_values.resize(n);
  out.right_vectors = ComplexMatrix(n);
  for (std::size_t r = 0; r < n; ++r) {
    out.singular_values[r] = sv[order[r]];
    for (std::size_t i = 0; i < n; ++i) out.right_vectors(i, r) = v[order[r] * n + i];
  }
  return out;
}

double svd_oracle(const ComplexMatrix& a) {
  if (a.dim() == 0) return 0.0;
  return jacobi_svd(a).singular_values.front();
}

}  // namespace opalg
