// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <cstring>

#include "phaselab/kernels/kernels.hpp"

namespace phaselab::kernels {

#if defined(PHASELAB_HAVE_AVX2_KERNELS)
namespace avx2 {
bool supported() { return __builtin_cpu_supports("avx2") != 0; }
}  // namespace avx2
#endif

namespace {

struct Table {
  void (*st_complex)(const Complex*, Complex*, std::size_t, double);
  void (*st_real)(const double*, double*, std::size_t, double);
  void (*bst_split)(const double*, const double*, double*, double*, std::size_t, double);
  double (*l1_c)(const Complex*, std::size_t);
  double (*l1_r)(const double*, std::size_t);
  double (*sa2_c)(const Complex*, std::size_t);
  double (*sa2_r)(const double*, std::size_t);
  double (*sad_c)(const Complex*, const Complex*, std::size_t);
  double (*sad_r)(const double*, const double*, std::size_t);
  const char* name;
};

constexpr Table kScalar = {
    scalar::soft_threshold_complex, scalar::soft_threshold_real,
    scalar::block_soft_threshold_split, scalar::l1_norm_complex,
    scalar::l1_norm_real, scalar::sum_abs2_complex, scalar::sum_abs2_real,
    scalar::sum_abs2_diff_complex, scalar::sum_abs2_diff_real, "scalar"};

#if defined(PHASELAB_HAVE_AVX2_KERNELS)
constexpr Table kAvx2 = {
    avx2::soft_threshold_complex, avx2::soft_threshold_real,
    avx2::block_soft_threshold_split, avx2::l1_norm_complex,
    avx2::l1_norm_real, avx2::sum_abs2_complex, avx2::sum_abs2_real,
    avx2::sum_abs2_diff_complex, avx2::sum_abs2_diff_real, "avx2"};
#endif

const Table& select() {
  const char* force = std::getenv("PHASELAB_KERNELS");
  if (force && std::strcmp(force, "scalar") == 0) return kScalar;
#if defined(PHASELAB_HAVE_AVX2_KERNELS)
  if (force && std::strcmp(force, "avx2") == 0) return kAvx2;
  if (!force && avx2::supported()) return kAvx2;
#endif
  return kScalar;
}

const Table& table() {
  static const Table& t = select();
  return t;
}

}  // namespace

void soft_threshold_complex(const Complex* w, Complex* out, std::size_t n, double eps) {
  table().st_complex(w, out, n, eps);
}
void soft_threshold_real(const double* w, double* out, std::size_t n, double eps) {
  table().st_real(w, out, n, eps);
}
void block_soft_threshold_split(const double* u, const double* v, double* out_u,
                                double* out_v, std::size_t n, double eps) {
  table().bst_split(u, v, out_u, out_v, n, eps);
}
double l1_norm_complex(const Complex* x, std::size_t n) { return table().l1_c(x, n); }
double l1_norm_real(const double* x, std::size_t n) { return table().l1_r(x, n); }
double sum_abs2_complex(const Complex* x, std::size_t n) { return table().sa2_c(x, n); }
double sum_abs2_real(const double* x, std::size_t n) { return table().sa2_r(x, n); }
double sum_abs2_diff_complex(const Complex* a, const Complex* b, std::size_t n) {
  return table().sad_c(a, b, n);
}
double sum_abs2_diff_real(const double* a, const double* b, std::size_t n) {
  return table().sad_r(a, b, n);
}
const char* active_backend() { return table().name; }

}  // namespace phaselab::kernels
