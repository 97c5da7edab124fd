// SPDX-License-Identifier: Apache-2.0
//
// AVX2+FMA complex kernels. This file is compiled with -mavx2 -mfma; nothing
// in it may run before the dispatcher has confirmed CPU support.
//
// Layout: std::complex<double> is two contiguous doubles, so one __m256d holds
// two complex values as (re0, im0, re1, im1).
#include "opalg/numkit/simd.hpp"

#if defined(OPALG_HAVE_AVX2)
#include <immintrin.h>

namespace opalg::simd {
namespace {

inline const double* raw(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* raw(cplx* p) { return reinterpret_cast<double*>(p); }

// (re, im) -> (im, re) within each complex lane
inline __m256d swap_ri(__m256d v) { return _mm256_permute_pd(v, 0x5); }
inline __m256d dup_re(__m256d v) { return _mm256_movedup_pd(v); }
inline __m256d dup_im(__m256d v) { return _mm256_permute_pd(v, 0xF); }

cplx dot_avx2(const cplx* a, const cplx* b, std::size_t n) {
  __m256d acc_re = _mm256_setzero_pd();  // (ar*br, ai*br)
  __m256d acc_im = _mm256_setzero_pd();  // (ai*bi, ar*bi)
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(raw(a + i));
    const __m256d vb = _mm256_loadu_pd(raw(b + i));
    acc_re = _mm256_fmadd_pd(va, dup_re(vb), acc_re);
    acc_im = _mm256_fmadd_pd(swap_ri(va), dup_im(vb), acc_im);
  }
  alignas(32) double r[4], s[4];
  _mm256_store_pd(r, acc_re);
  _mm256_store_pd(s, acc_im);
  double re = (r[0] - s[0]) + (r[2] - s[2]);
  double im = (r[1] + s[1]) + (r[3] + s[3]);
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
  }
  return {re, im};
}

cplx dotc_avx2(const cplx* a, const cplx* b, std::size_t n) {
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(raw(a + i));
    const __m256d vb = _mm256_loadu_pd(raw(b + i));
    acc_re = _mm256_fmadd_pd(va, dup_re(vb), acc_re);
    acc_im = _mm256_fmadd_pd(swap_ri(va), dup_im(vb), acc_im);
  }
  alignas(32) double r[4], s[4];
  _mm256_store_pd(r, acc_re);
  _mm256_store_pd(s, acc_im);
  double re = (r[0] + s[0]) + (r[2] + s[2]);
  double im = (s[1] - r[1]) + (s[3] - r[3]);
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

void axpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(raw(x + i));
    const __m256d t = _mm256_mul_pd(swap_ri(vx), ai);
    const __m256d prod = _mm256_fmaddsub_pd(vx, ar, t);
    _mm256_storeu_pd(raw(y + i), _mm256_add_pd(_mm256_loadu_pd(raw(y + i)), prod));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void axpy_conj_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(raw(x + i));
    const __m256d t = _mm256_mul_pd(vx, ar);
    const __m256d prod = _mm256_fmsubadd_pd(swap_ri(vx), ai, t);
    _mm256_storeu_pd(raw(y + i), _mm256_add_pd(_mm256_loadu_pd(raw(y + i)), prod));
  }
  for (; i < n; ++i) y[i] += alpha * std::conj(x[i]);
}

double norm_sq_avx2(const cplx* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(raw(x + i));
    acc = _mm256_fmadd_pd(vx, vx, acc);
  }
  alignas(32) double r[4];
  _mm256_store_pd(r, acc);
  double s = (r[0] + r[1]) + (r[2] + r[3]);
  for (; i < n; ++i) s += std::norm(x[i]);
  return s;
}

void scale_avx2(cplx alpha, cplx* x, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(raw(x + i));
    const __m256d t = _mm256_mul_pd(swap_ri(vx), ai);
    _mm256_storeu_pd(raw(x + i), _mm256_fmaddsub_pd(vx, ar, t));
  }
  for (; i < n; ++i) x[i] *= alpha;
}

constexpr KernelTable kAvx2{Isa::avx2,    dot_avx2,     dotc_avx2, axpy_avx2,
                            axpy_conj_avx2, norm_sq_avx2, scale_avx2};

}  // namespace

const KernelTable* avx2_table_unchecked() noexcept { return &kAvx2; }

}  // namespace opalg::simd

#endif  // OPALG_HAVE_AVX2
