// SPDX-License-Identifier: Apache-2.0
#include "opalg/numkit/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "opalg/errors.hpp"
#include "opalg/numkit/simd.hpp"

namespace opalg {
namespace {

Structure meet(Structure a, Structure b) {
  if (a == Structure::dense || b == Structure::dense) return Structure::dense;
  if (a == Structure::lower_triangular_toeplitz && b == Structure::lower_triangular_toeplitz)
    return Structure::lower_triangular_toeplitz;
  return Structure::lower_triangular;
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.dim() != b.dim())
    throw InputError(std::string(op) + ": dimension mismatch " + std::to_string(a.dim()) +
                     " vs " + std::to_string(b.dim()));
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t n) : n_(n), a_(n * n) {}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1.0;
  m.structure_ = Structure::lower_triangular_toeplitz;
  return m;
}

ComplexMatrix ComplexMatrix::lower_toeplitz(std::span<const cplx> symbol) {
  const std::size_t n = symbol.size();
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) m.a_[i * n + j] = symbol[i - j];
  m.structure_ = Structure::lower_triangular_toeplitz;
  return m;
}

bool ComplexMatrix::satisfies(Structure s) const noexcept {
  if (s == Structure::dense) return true;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (a_[i * n_ + j] != cplx{}) return false;
  if (s == Structure::lower_triangular) return true;
  for (std::size_t i = 1; i < n_; ++i)
    for (std::size_t j = 1; j <= i; ++j)
      if (a_[i * n_ + j] != a_[(i - 1) * n_ + (j - 1)]) return false;
  return true;
}

void ComplexMatrix::set_structure(Structure s) {
  if (!satisfies(s)) throw InputError("matrix entries do not satisfy the requested structure tag");
  structure_ = s;
}

std::vector<cplx> ComplexMatrix::column(std::size_t j) const {
  std::vector<cplx> c(n_);
  for (std::size_t i = 0; i < n_; ++i) c[i] = a_[i * n_ + j];
  return c;
}

std::vector<cplx> ComplexMatrix::apply(std::span<const cplx> x) const {
  if (x.size() != n_) throw InputError("apply: vector length does not match matrix dimension");
  const auto& k = simd::active();
  const bool lower = structure_ != Structure::dense;
  std::vector<cplx> y(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t len = lower ? i + 1 : n_;
    y[i] = k.dot(a_.data() + i * n_, x.data(), len);
  }
  return y;
}

std::vector<cplx> ComplexMatrix::apply_adjoint(std::span<const cplx> y) const {
  if (y.size() != n_) throw InputError("apply_adjoint: vector length does not match matrix dimension");
  const auto& k = simd::active();
  const bool lower = structure_ != Structure::dense;
  std::vector<cplx> x(n_);
  // x = sum_i conj(row_i) * y_i
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t len = lower ? i + 1 : n_;
    k.axpy_conj(y[i], a_.data() + i * n_, x.data(), len);
  }
  return x;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m.a_[j * n_ + i] = std::conj(a_[i * n_ + j]);
  return m;
}

ComplexMatrix ComplexMatrix::corner(std::size_t n) const {
  if (n > n_) throw InputError("corner: requested size exceeds matrix dimension");
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    std::copy_n(a_.data() + i * n_, n, m.a_.data() + i * n);
  m.structure_ = structure_;
  return m;
}

double ComplexMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& z : a_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::frobenius() const noexcept {
  return std::sqrt(simd::active().norm_sq(a_.data(), a_.size()));
}

bool ComplexMatrix::is_zero() const noexcept {
  return std::all_of(a_.begin(), a_.end(), [](const cplx& z) { return z == cplx{}; });
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(a_.begin(), a_.end(), [](const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& b) { return add_scaled(1.0, b); }
ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& b) { return add_scaled(-1.0, b); }

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  simd::active().scale(s, a_.data(), a_.size());
  return *this;
}

ComplexMatrix& ComplexMatrix::add_scaled(cplx s, const ComplexMatrix& b) {
  require_same_dim(*this, b, "add");
  simd::active().axpy(s, b.a_.data(), a_.data(), a_.size());
  structure_ = meet(structure_, b.structure_);
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "multiply");
  const std::size_t n = a.n_;
  if (a.structure_ == Structure::lower_triangular_toeplitz &&
      b.structure_ == Structure::lower_triangular_toeplitz) {
    return ComplexMatrix::lower_toeplitz(
        causal_convolution(a.toeplitz_symbol(), b.toeplitz_symbol(), n));
  }
  const auto& k = simd::active();
  const bool a_lower = a.structure_ != Structure::dense;
  const bool b_lower = b.structure_ != Structure::dense;
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx* ci = c.a_.data() + i * n;
    const std::size_t kmax = a_lower ? i + 1 : n;
    for (std::size_t l = 0; l < kmax; ++l) {
      const cplx s = a.a_[i * n + l];
      if (s == cplx{}) continue;
      const std::size_t len = b_lower ? l + 1 : n;
      k.axpy(s, b.a_.data() + l * n, ci, len);
    }
  }
  c.structure_ = (a_lower && b_lower) ? Structure::lower_triangular : Structure::dense;
  return c;
}

ComplexMatrix power(const ComplexMatrix& a, unsigned p) {
  ComplexMatrix result = ComplexMatrix::identity(a.dim());
  if (p == 0) return result;
  ComplexMatrix base = a;
  bool first = true;
  while (p > 0) {
    if (p & 1u) {
      result = first ? base : result * base;
      first = false;
    }
    p >>= 1u;
    if (p > 0) base = base * base;
  }
  return result;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  double m = 0.0;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

std::vector<cplx> causal_convolution(std::span<const cplx> a, std::span<const cplx> b,
                                     std::size_t n) {
  std::vector<cplx> out(n);
  const auto& k = simd::active();
  const std::size_t na = std::min(a.size(), n);
  for (std::size_t l = 0; l < na; ++l) {
    if (a[l] == cplx{}) continue;
    const std::size_t len = std::min(b.size(), n - l);
    k.axpy(a[l], b.data(), out.data() + l, len);
  }
  return out;
}

double norm2(std::span<const cplx> x) { return std::sqrt(simd::active().norm_sq(x.data(), x.size())); }

}  // namespace opalg
