// SPDX-License-Identifier: Apache-2.0
//
// Complex vector kernels used by every dense inner loop in the library.
//
// Each kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant compiled in a separate translation unit. The variant is
// picked once at startup from CPUID; OPALG_SIMD=scalar|avx2 in the
// environment overrides the choice. Results of the two variants agree to
// rounding but are not bitwise identical (different summation order).
#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace opalg::simd {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  /// sum_i a[i] * b[i] (no conjugation)
  cplx (*dot)(const cplx* a, const cplx* b, std::size_t n);
  /// sum_i conj(a[i]) * b[i]
  cplx (*dotc)(const cplx* a, const cplx* b, std::size_t n);
  /// y += alpha * x
  void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
  /// y += alpha * conj(x)
  void (*axpy_conj)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
  /// sum_i |x[i]|^2
  double (*norm_sq)(const cplx* x, std::size_t n);
  /// x *= alpha
  void (*scale)(cplx alpha, cplx* x, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;

/// nullptr when the build or the CPU lacks AVX2+FMA.
const KernelTable* avx2_kernels() noexcept;

/// The table in use for this process.
const KernelTable& active() noexcept;

/// Force a variant (tests and benchmarks). Returns false and leaves the
/// selection unchanged when the variant is unavailable.
bool select(Isa isa) noexcept;

std::string_view isa_name(Isa isa) noexcept;

}  // namespace opalg::simd
