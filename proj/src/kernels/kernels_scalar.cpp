// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "phaselab/kernels/kernels.hpp"

namespace phaselab::kernels::scalar {

void soft_threshold_complex(const Complex* w, Complex* out, std::size_t n, double eps) {
  for (std::size_t i = 0; i < n; ++i) {
    double re = w[i].real();
    double im = w[i].imag();
    double m2 = re * re + im * im;
    if (m2 > eps * eps) {
      double m = std::sqrt(m2);
      double s = (m - eps) / m;
      out[i] = Complex(re * s, im * s);
    } else {
      out[i] = Complex(0.0, 0.0);
    }
  }
}

void soft_threshold_real(const double* w, double* out, std::size_t n, double eps) {
  for (std::size_t i = 0; i < n; ++i) {
    double mag = std::fabs(w[i]);
    double t = mag - eps;
    out[i] = t > 0.0 ? std::copysign(t, w[i]) : 0.0;
  }
}

void block_soft_threshold_split(const double* u, const double* v, double* out_u,
                                double* out_v, std::size_t n, double eps) {
  for (std::size_t i = 0; i < n; ++i) {
    double m2 = u[i] * u[i] + v[i] * v[i];
    if (m2 > eps * eps) {
      double m = std::sqrt(m2);
      double s = (m - eps) / m;
      out_u[i] = u[i] * s;
      out_v[i] = v[i] * s;
    } else {
      out_u[i] = 0.0;
      out_v[i] = 0.0;
    }
  }
}

double l1_norm_complex(const Complex* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double re = x[i].real();
    double im = x[i].imag();
    acc += std::sqrt(re * re + im * im);
  }
  return acc;
}

double l1_norm_real(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::fabs(x[i]);
  return acc;
}

double sum_abs2_complex(const Complex* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double re = x[i].real();
    double im = x[i].imag();
    acc += re * re + im * im;
  }
  return acc;
}

double sum_abs2_real(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

double sum_abs2_diff_complex(const Complex* a, const Complex* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double re = a[i].real() - b[i].real();
    double im = a[i].imag() - b[i].imag();
    acc += re * re + im * im;
  }
  return acc;
}

double sum_abs2_diff_real(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

}  // namespace phaselab::kernels::scalar
