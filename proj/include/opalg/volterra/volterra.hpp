// SPDX-License-Identifier: Apache-2.0
//
// Collocation discretization of V_f xi(x) = int_0^x f(x - t) xi(t) dt.
//
// Inputs are piecewise constant on the N cells and the output is evaluated
// at the midpoints x_i = (i + 1/2) h. Row i then integrates f over
// [x_i - (j + 1) h, x_i - j h] against cell j, which is the cell integral
// mu_{i-j} (half a cell on the diagonal). The matrix is lower-triangular
// Toeplitz with symbol (mu_0, ..., mu_{N-1}); f = 1 gives the discretized
// Volterra operator V^_N.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "opalg/numkit/complex_matrix.hpp"
#include "opalg/numkit/roots.hpp"
#include "opalg/report.hpp"
#include "opalg/volterra/sampled_kernel.hpp"

namespace opalg::volterra {

/// Throws InputError for non-finite cell integrals.
ComplexMatrix build_vf(const SampledKernel& f);
/// Same, after checking that f lives on an N-cell grid.
ComplexMatrix build_vf(const SampledKernel& f, std::size_t n);

/// V^_N = build_vf(1).
ComplexMatrix volterra_matrix(std::size_t n);

/// e(N) = ||V^_N^{n+1} - build_vf(u^n / n!)|| at N and 2N; asserts the error
/// shrinks (or is zero at both). n <= 8.
ExperimentReport power_kernel_check(unsigned n, std::size_t grid);

/// sigma_max(build_vf(f)) against sum_k |mu_k|.
ExperimentReport l1_norm_bound_check(const SampledKernel& f);

/// ||f||_# = (int_0^1 |f(t)|^2 (1 - t) dt)^{1/2}.
double hs_norm(const SampledKernel& f);

struct V2Exact {
  RootSolve solve;
  double eta0 = 0.0;  ///< least positive root of cosh(eta) cos(eta) = -1
  double norm = 0.0;  ///< eta0^{-2}
};

/// Upward scan from 0 in steps of 0.1 for the first sign change, then
/// bisection to 1e-12.
V2Exact v2_exact();

/// sigma_max(V^) and sigma_max(V^^2) for each N against 2/pi and eta0^{-2};
/// asserts the errors fall along the list and are <= 1e-2 at the last N.
ExperimentReport v2_convergence(std::span<const std::size_t> grids);

/// c_n = n! sigma_max(V^_N^n), n = 1..n_max. n_max <= 12, N >= 512.
ExperimentReport power_norm_table(unsigned n_max, std::size_t grid);

/// Discrete f * g on the shared grid with samples s_k = mu_k / w_k
/// (w_0 = h/2, w_k = h):
///
///   nu_0 = 0,   nu_k = h^2 sum_{l=0}^{k-1} s^f_{k-l} s^g_l.
///
/// This is the left-rectangle rule for int_0^x f(x - t) g(t) dt at the cell
/// centers, first order in h, and keeps exact zeros: nu_k = 0 for k below
/// support_index(f) + support_index(g).
SampledKernel convolve(const SampledKernel& f, const SampledKernel& g);

/// true iff build_vf(f)^n is the zero matrix bitwise.
bool nilpotency_check(const SampledKernel& f, unsigned n);

struct NilpotentApproximation {
  SampledKernel kernel;  ///< f 1_[delta, 1]
  double bound = 0.0;    ///< int_0^delta |f|
  double distance = 0.0;  ///< sigma_max(build_vf(f) - build_vf(kernel))
  std::size_t nilpotency_index = 0;  ///< ceil(N / (delta N)); 0 when delta = 0
  bool within_bound = false;
};

/// delta must be a grid point.
NilpotentApproximation nilpotent_approximation(const SampledKernel& f, double delta);

struct SupportEstimate {
  double alpha = 0.0;
  double beta = 0.0;
  double product_norm = 0.0;
  bool consistent = false;  ///< alpha + beta >= 1 - 2/N
};

/// Support starts of f and g given f * g = 0. Throws PreconditionError when
/// sigma_max(build_vf(convolve(f, g))) >= 1e-10.
SupportEstimate titchmarsh_alpha(const SampledKernel& f, const SampledKernel& g);

/// Least-squares fit of x by sum_{j=2}^n a_j x^j on 1000 points, then
/// ||V^^2 - sum_j j! a_j V^^{j+1}|| against eps + 5/N.
ExperimentReport muntz_no_gauge_demo(unsigned degree, std::size_t grid);

/// Ideal absorption for f vanishing on [0, x0] and the corner compression
/// P V_f P onto [0, x0]. Throws PreconditionError naming the first nonzero
/// half-cell when f is not in the ideal.
ExperimentReport ideal_restriction_check(const SampledKernel& f, double x0, const SampledKernel& g);

/// (1 - x)^{-3/2} on each grid: sigma_max should grow without bound.
ExperimentReport unbounded_witness_check(std::span<const std::size_t> grids);

}  // namespace opalg::volterra
