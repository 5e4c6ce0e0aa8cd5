// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>

// Data-parallel inner loops of the solvers. Each kernel has a scalar
// reference implementation and, on x86-64, an AVX2 variant selected at
// runtime. The two variants are equivalence-tested against each other; the
// AVX2 thresholding kernels use the exact same operation sequence as the
// scalar ones (mul/add/sqrt/div, no FMA contraction), so they agree to the
// last bit. Reductions differ only in summation order.
//
// Set PHASELAB_KERNELS=scalar (or =avx2) to force a backend.

namespace phaselab::kernels {

using Complex = std::complex<double>;

// Dispatched entry points.

/// out[i] = sgn(w[i]) * (|w[i]| - eps)^+, complex magnitude shrinkage.
void soft_threshold_complex(const Complex* w, Complex* out, std::size_t n, double eps);

/// Real scalar shrinkage, elementwise.
void soft_threshold_real(const double* w, double* out, std::size_t n, double eps);

/// Block-2 shrinkage on split storage: pairs (u[i], v[i]) are shrunk by their
/// joint Euclidean norm. Identical math to soft_threshold_complex under the
/// (real, imag) <-> 2-block identification.
void block_soft_threshold_split(const double* u, const double* v, double* out_u,
                                double* out_v, std::size_t n, double eps);

/// sum_i |x[i]| (complex magnitudes).
double l1_norm_complex(const Complex* x, std::size_t n);

/// sum_i |x[i]|.
double l1_norm_real(const double* x, std::size_t n);

/// sum_i |x[i]|^2.
double sum_abs2_complex(const Complex* x, std::size_t n);
double sum_abs2_real(const double* x, std::size_t n);

/// sum_i |a[i] - b[i]|^2.
double sum_abs2_diff_complex(const Complex* a, const Complex* b, std::size_t n);
double sum_abs2_diff_real(const double* a, const double* b, std::size_t n);

/// Name of the backend the dispatcher selected ("scalar" or "avx2").
const char* active_backend();

// Reference implementations, always available (used directly by the
// equivalence tests).
namespace scalar {
void soft_threshold_complex(const Complex* w, Complex* out, std::size_t n, double eps);
void soft_threshold_real(const double* w, double* out, std::size_t n, double eps);
void block_soft_threshold_split(const double* u, const double* v, double* out_u,
                                double* out_v, std::size_t n, double eps);
double l1_norm_complex(const Complex* x, std::size_t n);
double l1_norm_real(const double* x, std::size_t n);
double sum_abs2_complex(const Complex* x, std::size_t n);
double sum_abs2_real(const double* x, std::size_t n);
double sum_abs2_diff_complex(const Complex* a, const Complex* b, std::size_t n);
double sum_abs2_diff_real(const double* a, const double* b, std::size_t n);
}  // namespace scalar

#if defined(PHASELAB_HAVE_AVX2_KERNELS)
namespace avx2 {
bool supported();  // runtime CPU check
void soft_threshold_complex(const Complex* w, Complex* out, std::size_t n, double eps);
void soft_threshold_real(const double* w, double* out, std::size_t n, double eps);
void block_soft_threshold_split(const double* u, const double* v, double* out_u,
                                double* out_v, std::size_t n, double eps);
double l1_norm_complex(const Complex* x, std::size_t n);
double l1_norm_real(const double* x, std::size_t n);
double sum_abs2_complex(const Complex* x, std::size_t n);
double sum_abs2_real(const double* x, std::size_t n);
double sum_abs2_diff_complex(const Complex* a, const Complex* b, std::size_t n);
double sum_abs2_diff_real(const double* a, const double* b, std::size_t n);
}  // namespace avx2
#endif

}  // namespace phaselab::kernels
