// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

#include "opalg/numkit/complex_matrix.hpp"

namespace opalg {

inline constexpr unsigned kDefaultNormRestarts = 3;
inline constexpr std::size_t kPowerIterationCap = 100000;

/// Smallest admissible relative tolerance for an N x N problem.
double min_norm_tolerance(std::size_t n) noexcept;

/// Default tolerance: 1e-13, raised to the admissible floor for large N.
double default_norm_tolerance(std::size_t n) noexcept;

/// Largest singular value of `a` by power iteration on A^H A.
///
/// Restart r starts from a complex Gaussian vector drawn with seed r + 1; an
/// iteration stops when the relative change of ||A x|| drops below `tol`.
/// The result is the maximum over restarts.
///
/// Throws InputError for non-finite entries or tol below
/// `min_norm_tolerance`, NumericError (carrying the last estimate) when a
/// restart hits the iteration cap.
double operator_norm(const ComplexMatrix& a, double tol, unsigned restarts = kDefaultNormRestarts,
                     std::size_t max_iterations = kPowerIterationCap);
double operator_norm(const ComplexMatrix& a);

}  // namespace opalg
