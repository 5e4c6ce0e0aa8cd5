// SPDX-License-Identifier: Apache-2.0
//
// AVX2 variants. The thresholding kernels replicate the scalar operation
// sequence exactly (mul, add, sqrt, div; no FMA), so outputs are
// bit-identical to the reference. Reductions use four independent lanes and
// agree with the reference up to summation order.

#if defined(PHASELAB_HAVE_AVX2_KERNELS)

#include <immintrin.h>

#include <cmath>

#include "phaselab/kernels/kernels.hpp"

namespace phaselab::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(s, s);
  return _mm_cvtsd_f64(_mm_add_sd(s, sh));
}

}  // namespace

void soft_threshold_complex(const Complex* w, Complex* out, std::size_t n, double eps) {
  const double* in = reinterpret_cast<const double*>(w);
  double* o = reinterpret_cast<double*>(out);
  const __m256d veps = _mm256_set1_pd(eps);
  const __m256d veps2 = _mm256_set1_pd(eps * eps);
  std::size_t pairs = n / 2;
  for (std::size_t i = 0; i < pairs; ++i) {
    __m256d v = _mm256_loadu_pd(in + 4 * i);  // re0 im0 re1 im1
    __m256d sq = _mm256_mul_pd(v, v);
    __m256d m2 = _mm256_hadd_pd(sq, sq);  // |w0|^2 |w0|^2 |w1|^2 |w1|^2
    __m256d keep = _mm256_cmp_pd(m2, veps2, _CMP_GT_OQ);
    __m256d m = _mm256_sqrt_pd(m2);
    __m256d s = _mm256_div_pd(_mm256_sub_pd(m, veps), m);
    s = _mm256_and_pd(s, keep);
    _mm256_storeu_pd(o + 4 * i, _mm256_mul_pd(v, s));
  }
  if (n & 1) scalar::soft_threshold_complex(w + n - 1, out + n - 1, 1, eps);
}

void soft_threshold_real(const double* w, double* out, std::size_t n, double eps) {
  const __m256d veps = _mm256_set1_pd(eps);
  const __m256d vzero = _mm256_setzero_pd();
  const __m256d vsign = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(w + i);
    __m256d mag = _mm256_andnot_pd(vsign, v);
    __m256d t = _mm256_max_pd(_mm256_sub_pd(mag, veps), vzero);
    __m256d sgn = _mm256_and_pd(v, vsign);
    _mm256_storeu_pd(out + i, _mm256_or_pd(t, sgn));
  }
  if (i < n) scalar::soft_threshold_real(w + i, out + i, n - i, eps);
}

void block_soft_threshold_split(const double* u, const double* v, double* out_u,
                                double* out_v, std::size_t n, double eps) {
  const __m256d veps = _mm256_set1_pd(eps);
  const __m256d veps2 = _mm256_set1_pd(eps * eps);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_loadu_pd(u + i);
    __m256d b = _mm256_loadu_pd(v + i);
    __m256d m2 = _mm256_add_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
    __m256d keep = _mm256_cmp_pd(m2, veps2, _CMP_GT_OQ);
    __m256d m = _mm256_sqrt_pd(m2);
    __m256d s = _mm256_div_pd(_mm256_sub_pd(m, veps), m);
    s = _mm256_and_pd(s, keep);
    _mm256_storeu_pd(out_u + i, _mm256_mul_pd(a, s));
    _mm256_storeu_pd(out_v + i, _mm256_mul_pd(b, s));
  }
  if (i < n)
    scalar::block_soft_threshold_split(u + i, v + i, out_u + i, out_v + i, n - i, eps);
}

double l1_norm_complex(const Complex* x, std::size_t n) {
  const double* in = reinterpret_cast<const double*>(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t quads = n / 4;
  for (std::size_t i = 0; i < quads; ++i) {
    __m256d a = _mm256_loadu_pd(in + 8 * i);
    __m256d b = _mm256_loadu_pd(in + 8 * i + 4);
    __m256d m2 = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
    acc = _mm256_add_pd(acc, _mm256_sqrt_pd(m2));
  }
  double total = hsum(acc);
  for (std::size_t i = 4 * quads; i < n; ++i) {
    double re = x[i].real(), im = x[i].imag();
    total += std::sqrt(re * re + im * im);
  }
  return total;
}

double l1_norm_real(const double* x, std::size_t n) {
  const __m256d vsign = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(vsign, _mm256_loadu_pd(x + i)));
  double total = hsum(acc);
  for (; i < n; ++i) total += std::fabs(x[i]);
  return total;
}

double sum_abs2_complex(const Complex* x, std::size_t n) {
  return sum_abs2_real(reinterpret_cast<const double*>(x), 2 * n);
}

double sum_abs2_real(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
  }
  double total = hsum(acc);
  for (; i < n; ++i) total += x[i] * x[i];
  return total;
}

double sum_abs2_diff_complex(const Complex* a, const Complex* b, std::size_t n) {
  return sum_abs2_diff_real(reinterpret_cast<const double*>(a),
                            reinterpret_cast<const double*>(b), 2 * n);
}

double sum_abs2_diff_real(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double total = hsum(acc);
  for (; i < n; ++i) {
    double d = a[i] - b[i];
    total += d * d;
  }
  return total;
}

}  // namespace phaselab::kernels::avx2

#endif  // PHASELAB_HAVE_AVX2_KERNELS
