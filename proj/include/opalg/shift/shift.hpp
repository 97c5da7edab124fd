// SPDX-License-Identifier: Apache-2.0
//
// Finite truncations of the algebra generated by a weighted shift.
//
// T e_n = a_n e_{n+1} on span{e_0, ..., e_{N-1}}, with T e_{N-1} = 0. Every
// element of the truncated algebra is a polynomial S = sum_{k<N} c_k T^k, and
// S e_0 = sum_k c_k a_0...a_{k-1} e_k, so S is determined by its first column.
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "opalg/gauge/gauge.hpp"
#include "opalg/numkit/complex_matrix.hpp"
#include "opalg/report.hpp"
#include "opalg/shift/weights.hpp"

namespace opalg::shift {

struct ShiftTruncation {
  WeightSequence weights;
  ComplexMatrix matrix;

  std::size_t dim() const noexcept { return matrix.dim(); }
  /// T^1, ..., T^d by repeated multiplication.
  std::vector<ComplexMatrix> powers(std::size_t d) const;
  /// T^1, ..., T^{N-1}: every power that survives truncation.
  std::vector<ComplexMatrix> powers() const { return powers(dim() - 1); }
};

/// Throws InputError for N < 2 or a zero among a_0..a_{N-2}.
ShiftTruncation build_shift(const WeightSequence& weights, std::size_t n);

/// ||S e_0||_2.
double vector_norm_at_e0(const ComplexMatrix& s);

/// S^(k) = S(k, 0) / (a_0 ... a_{k-1}) for k = 1..N-1, read off the first
/// column. Index 0 of the result holds S(0, 0).
std::vector<cplx> band_coefficients(const ComplexMatrix& s, const ShiftTruncation& t);

/// Fourier series of S over T^1..T^{N-1} by circle quadrature on 2N nodes.
gauge::FourierSeries shift_fourier_series(const ComplexMatrix& s, const ShiftTruncation& t);

/// Coefficients c_1..c_count, i.i.d. standard complex Gaussian (real and
/// imaginary parts N(0, 1/2)), from a generator seeded by (seed, stream).
std::vector<cplx> random_coefficients(std::size_t count, std::uint64_t seed, std::uint64_t stream);

/// Ratios ||S|| / ||S e_0|| for `trials` random polynomials in T against the
/// bound M / |a_0|. Throws PreconditionError unless the weights are
/// decreasing with finite sum of squares.
ExperimentReport norm_equivalence_report(const ShiftTruncation& t, std::size_t trials, std::uint64_t seed);

/// p_n(T) = T + ... + T^n on unit weights of dimension `dim` (default 2n),
/// tested on v_n = (e_0 + ... + e_{n-1}) / sqrt(n).
ExperimentReport inequivalence_demo(std::size_t n, std::size_t dim = 0);

/// |‖S‖ - 1| < 1e-9 and |‖S e_0‖ - 1| < 1e-9.
bool extreme_point_check(const ComplexMatrix& s);

/// beta_n = max_{k <= k_max} |a_{k+1} ... a_{k+n}|^{1/n} for n = 1..n_max.
ExperimentReport quasinilpotence_profile(const WeightSequence& weights, std::size_t n_max, std::size_t k_max);

/// Lowest k with |S^(k)| > tau. Throws InputError for the zero element.
int ideal_generator_index(const ComplexMatrix& s, const ShiftTruncation& t);

/// Factors S = T^k Q with Q invertible and checks sum_{m=0}^{N} S R^m = T^k,
/// R = I - Q, after normalizing S^(k) = 1.
ExperimentReport neumann_factor_check(const ComplexMatrix& s, int k, const ShiftTruncation& t);

struct InvariantSubspace {
  std::size_t first_index = 0;            ///< k: the span is e_k..e_{N-1}
  std::vector<std::vector<cplx>> basis;   ///< orthonormal, from T^j e_0, j = k..N-1
  double invariance_residual = 0.0;       ///< max |((I - P) T P)(i, j)|
  bool matches_coordinate_span = false;   ///< rank N - k, no mass below index k
};

/// Image of the ideal generated by T^k under S -> S e_0. Throws IndexError
/// unless 1 <= k < N.
InvariantSubspace invariant_subspace_of_ideal(std::size_t k, const ShiftTruncation& t);

/// Lowest index of RS against those of R and S. Throws PreconditionError when
/// j0 + k0 >= N, since the product then vanishes at this truncation.
ExperimentReport lowest_index_of_product(const ComplexMatrix& r, const ComplexMatrix& s, const ShiftTruncation& t);

}  // namespace opalg::shift
