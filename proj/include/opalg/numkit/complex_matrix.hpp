// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace opalg {

using cplx = std::complex<double>;

/// Sparsity pattern a matrix is known to satisfy.
enum class Structure {
  dense,
  lower_triangular,           ///< zero strictly above the diagonal
  lower_triangular_toeplitz,  ///< lower triangular and (i,j) depends only on i-j
};

/// Square complex matrix, row-major.
///
/// The structure tag is a promise about the entries; it is checked whenever
/// it is set explicitly and propagated through +, -, and *. Mutable element
/// access demotes the tag to dense, so callers that fill entries by hand
/// re-tag with `set_structure` afterwards.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n);

  static ComplexMatrix identity(std::size_t n);
  /// Lower-triangular Toeplitz matrix whose first column is `symbol`.
  static ComplexMatrix lower_toeplitz(std::span<const cplx> symbol);

  std::size_t dim() const noexcept { return n_; }
  Structure structure() const noexcept { return structure_; }

  /// Throws InputError when the entries do not satisfy `s`.
  void set_structure(Structure s);
  bool satisfies(Structure s) const noexcept;

  cplx operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }
  cplx& operator()(std::size_t i, std::size_t j) noexcept {
    structure_ = Structure::dense;
    return a_[i * n_ + j];
  }

  const cplx* data() const noexcept { return a_.data(); }
  std::span<const cplx> row(std::size_t i) const noexcept { return {a_.data() + i * n_, n_}; }
  std::vector<cplx> column(std::size_t j) const;

  /// First column; meaningful as a Toeplitz symbol only when the tag says so.
  std::vector<cplx> toeplitz_symbol() const { return column(0); }

  std::vector<cplx> apply(std::span<const cplx> x) const;
  std::vector<cplx> apply_adjoint(std::span<const cplx> y) const;

  ComplexMatrix adjoint() const;
  /// Top-left n x n corner (the compression onto the first n basis vectors).
  ComplexMatrix corner(std::size_t n) const;

  double max_abs() const noexcept;
  double frobenius() const noexcept;
  bool is_zero() const noexcept;
  bool all_finite() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& b);
  ComplexMatrix& operator-=(const ComplexMatrix& b);
  ComplexMatrix& operator*=(cplx s);
  /// this += s * b
  ComplexMatrix& add_scaled(cplx s, const ComplexMatrix& b);

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t n_ = 0;
  std::vector<cplx> a_;
  Structure structure_ = Structure::dense;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// A^p for p >= 0 by repeated squaring.
ComplexMatrix power(const ComplexMatrix& a, unsigned p);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// (a * b)[k] = sum_{l<=k} a[l] b[k-l] for k < n: the symbol of a product of
/// lower-triangular Toeplitz matrices.
std::vector<cplx> causal_convolution(std::span<const cplx> a, std::span<const cplx> b,
                                     std::size_t n);

double norm2(std::span<const cplx> x);

}  // namespace opalg
