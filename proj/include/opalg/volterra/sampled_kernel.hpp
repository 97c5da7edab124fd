// SPDX-License-Identifier: Apache-2.0
//
// Convolution kernels f on [0, 1] stored as integrals over a uniform grid.
//
// The grid has N cells of width h = 1/N and is refined into 2N half-cells of
// width h/2. For each half-cell the kernel keeps the signed mass of f, the
// mass of |f|, and the mass of |f|^2 (1 - t). The collocation cell
// integrals are
//
//   mu_0 = int_0^{h/2} f,   mu_k = int_{(k-1/2)h}^{(k+1/2)h} f   (k >= 1),
//
// so the last half-cell [1 - h/2, 1] enters only the L1 and sharp-norm sums.
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "opalg/numkit/complex_matrix.hpp"

namespace opalg::volterra {

enum class SampleMode { midpoint_sample, exact_cell_integral };

struct StepSegment {
  double a = 0.0;  ///< segment [a, b)
  double b = 0.0;
  double value = 0.0;
};

class SampledKernel {
 public:
  static SampledKernel constant(cplx c, std::size_t n);
  /// sum_j coeffs[j] u^j, masses by 16-point Gauss-Legendre per half-cell
  /// (exact through degree 15 for the signed and sharp masses).
  static SampledKernel polynomial(std::span<const double> coeffs, std::size_t n);
  /// u^k / k!
  static SampledKernel power_over_factorial(unsigned k, std::size_t n);
  /// sum of value * 1_[a, b), integrated exactly.
  static SampledKernel step(std::span<const StepSegment> segments, std::size_t n);
  /// sum_{j=1}^m (2^j / j) 1_[1 - 2^{-(j-1)}, 1 - 2^{-j}). N must be a power
  /// of two with N >= 2^m.
  static SampledKernel notell1(unsigned m, std::size_t n);
  /// (1 - x)^{-3/2} from its antiderivative; the last half-cell is infinite.
  static SampledKernel singular32(std::size_t n);
  /// f evaluated at half-cell midpoints.
  static SampledKernel sample(const std::function<cplx(double)>& f, std::size_t n);

  /// `const:c` | `poly:c0,c1,...` | `powern:k` | `step:a,b,v;a,b,v;...` |
  /// `notell1:m` | `singular32`
  static SampledKernel parse(std::string_view spec, std::size_t n);

  std::size_t size() const noexcept { return mu_.size(); }
  double step_size() const noexcept { return 1.0 / static_cast<double>(mu_.size()); }
  SampleMode mode() const noexcept { return mode_; }
  const std::string& label() const noexcept { return label_; }

  std::span<const cplx> cell_integrals() const noexcept { return mu_; }
  std::span<const cplx> half_cells() const noexcept { return half_; }

  /// Index a of the first nonzero mu_k; N when every mu_k is zero.
  std::size_t support_index() const noexcept;
  /// a h, the grid point below which every mu_k vanishes (1 for f = 0).
  double support_start() const noexcept;

  /// int_0^x |f|, linear inside the half-cell containing x.
  double l1_partial(double x) const;
  double l1_total() const { return l1_partial(1.0); }
  /// sum_k |mu_k|, the discrete L1 bound for the collocation matrix.
  double cell_l1() const;
  /// ||f||_#^2 = int_0^1 |f(t)|^2 (1 - t) dt.
  double sharp_norm_sq() const;

  /// The same kernel on a coarser grid; N must be a multiple of `n`.
  SampledKernel resample(std::size_t n) const;
  /// f 1_[c h, 1]: half-cells below 2c set to zero.
  SampledKernel truncated_below(std::size_t cell) const;

  /// alpha f + g on a shared grid. Cell integrals combine exactly; the |f|
  /// and sharp masses are re-derived from the signed masses.
  friend SampledKernel combine(cplx alpha, const SampledKernel& f, const SampledKernel& g);
  /// First-order collocation product of f * g, see volterra.hpp.
  friend SampledKernel convolve(const SampledKernel& f, const SampledKernel& g);

 private:
  explicit SampledKernel(std::size_t n, SampleMode mode, std::string label);
  void derive_cells();
  void derive_abs_and_sharp();

  SampleMode mode_ = SampleMode::exact_cell_integral;
  std::string label_;
  std::vector<cplx> mu_;
  std::vector<cplx> half_;
  std::vector<double> abs_half_;
  std::vector<double> sharp_half_;
};

SampledKernel combine(cplx alpha, const SampledKernel& f, const SampledKernel& g);
SampledKernel convolve(const SampledKernel& f, const SampledKernel& g);

}  // namespace opalg::volterra
