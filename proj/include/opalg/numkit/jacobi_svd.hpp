// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "opalg/numkit/complex_matrix.hpp"

namespace opalg {

inline constexpr std::size_t kSvdOracleMaxDim = 512;

struct SvdResult {
  std::vector<double> singular_values;  ///< descending
  ComplexMatrix right_vectors;          ///< column j pairs with singular_values[j]
  int sweeps = 0;
};

/// One-sided (Hestenes) Jacobi SVD of a square complex matrix.
///
/// Columns of A are rotated pairwise until mutually orthogonal; the singular
/// values are the final column norms. Throws InputError above
/// kSvdOracleMaxDim and NumericError if 60 sweeps do not suffice.
SvdResult jacobi_svd(const ComplexMatrix& a);

/// Largest singular value via jacobi_svd. Shares no code path with
/// operator_norm, which makes it usable as a cross-check.
double svd_oracle(const ComplexMatrix& a);

}  // namespace opalg
