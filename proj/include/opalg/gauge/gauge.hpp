// SPDX-License-Identifier: Apache-2.0
//
// Gauge actions on algebras generated by a single basis-graded operator.
//
// For a matrix A in a fixed orthonormal basis, conjugation by the diagonal
// unitary D = diag(1, lambda, ..., lambda^{N-1}) multiplies entry (i, j) by
// lambda^{i-j}. On the algebra generated by a weighted shift this is the gauge
// automorphism T -> lambda T; averaging it against lambda^{-k} over the circle
// isolates the k-th Fourier coefficient S^(k) T^k.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "opalg/numkit/circle.hpp"
#include "opalg/numkit/complex_matrix.hpp"

namespace opalg::gauge {

/// Coefficients k -> S^(k), k >= 1, of the formal series S ~ sum S^(k) T^k.
class FourierSeries {
 public:
  FourierSeries(std::size_t truncation_dim, double threshold);

  void set(int k, cplx value) { coeffs_[k] = value; }

  /// Stored value, zero if never set.
  cplx raw(int k) const;
  /// Stored value, or zero when |value| <= threshold.
  cplx coefficient(int k) const;
  bool is_nonzero(int k) const { return std::abs(raw(k)) > threshold_; }

  /// Smallest k with |S^(k)| > threshold.
  std::optional<int> lowest_index() const;
  /// All k with |S^(k)| > threshold, ascending.
  std::vector<int> support() const;
  int max_index() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

  std::size_t truncation_dim() const noexcept { return dim_; }
  double threshold() const noexcept { return threshold_; }

  /// Largest entrywise |C_k - S^(k) T^k| seen during extraction. Rounding
  /// level for operators in a gauge-graded algebra.
  double band_residual = 0.0;

 private:
  std::size_t dim_;
  double threshold_;
  std::map<int, cplx> coeffs_;
};

/// T^1, ..., T^d.
std::vector<ComplexMatrix> powers_of(const ComplexMatrix& t, std::size_t d);

/// sum_j coeffs[j-1] T^j for j = 1..coeffs.size().
ComplexMatrix polynomial(std::span<const cplx> coeffs, std::span<const ComplexMatrix> powers);

/// D_lambda A D_lambda^*, entry (i, j) scaled by lambda^{i-j}.
/// Throws InputError if | |lambda| - 1 | > 1e-14.
ComplexMatrix gauge_conjugate(const ComplexMatrix& a, cplx lambda);
/// Same, at grid node m, with powers taken from the grid's root table.
ComplexMatrix gauge_conjugate(const ComplexMatrix& a, const CircleGrid& grid, std::size_t m);

/// S^(k) for k = 1..powers.size(), each from the circle average of
/// gauge_conjugate(A, .) lambda^{-k} divided by T^k at its largest entry.
///
/// The threshold defaults to 1e-10 ||A||. Throws InputError if the grid has
/// fewer than 2N nodes and IndexError naming k when T^k vanishes.
FourierSeries fourier_coefficients(const ComplexMatrix& a, const CircleGrid& grid,
                                   std::span<const ComplexMatrix> powers,
                                   std::optional<double> threshold = std::nullopt);

/// sum_{j=1}^n ((n - j) / n) S^(j) T^j.
/// Powers are needed for every j <= n with a nonzero coefficient.
ComplexMatrix fejer_sum(const FourierSeries& series, int n, std::span<const ComplexMatrix> powers);

/// (d/n) sum_j |S^(j)| ||T^j||, d the top nonzero index: a bound on
/// ||S - fejer_sum(S, n)|| whenever n >= d.
double fejer_error_bound(const FourierSeries& series, int n, std::span<const ComplexMatrix> powers);

enum class WitnessKind { linear_dependence, norm_asymmetry };

/// Computational certificate that an algebra admits no gauge action.
struct GaugeWitness {
  WitnessKind kind{};
  // linear_dependence
  std::vector<cplx> dependence;  ///< a_1..a_m, unit 2-norm, a_m != 0
  double top_power_norm = 0.0;   ///< ||T^m||
  double dependence_residual = 0.0;
  // norm_asymmetry
  cplx phase{1.0, 0.0};  ///< lambda*
  double ratio = 1.0;    ///< r(lambda*) / r(1)
  double margin = 0.0;
};

/// Looks for a minimal-degree relation a_1 T + ... + a_m T^m = 0 with T^m != 0.
std::optional<GaugeWitness> certify_no_gauge_linear_dependence(std::span<const ComplexMatrix> powers);

/// Scans r(lambda) = ||sum_j lambda^j a_j T^j|| over the grid; any
/// |r(lambda)/r(1) - 1| > margin contradicts an isometric gauge action.
std::optional<GaugeWitness> certify_no_gauge_norm_scan(std::span<const cplx> coeffs,
                                                       std::span<const ComplexMatrix> powers,
                                                       const CircleGrid& grid, double margin);

}  // namespace opalg::gauge
