// SPDX-License-Identifier: Apache-2.0
#include "phaselab/core/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

#include "phaselab/errors.hpp"

namespace phaselab::dft {

namespace {

// FFTW plan creation is not thread safe; execution via fftw_execute_dft on
// caller-owned buffers is. Plans are cached per (size, sign) and kept for the
// process lifetime. FFTW_ESTIMATE keeps the algorithm choice deterministic.
class PlanCache {
 public:
  fftw_plan get(int n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    CxVector in(n), out(n);
    fftw_plan p = fftw_plan_dft_1d(
        n, reinterpret_cast<fftw_complex*>(in.data()),
        reinterpret_cast<fftw_complex*>(out.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw NumericalError("fftw plan creation failed", 0);
    plans_.emplace(key, p);
    return p;
  }

  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

void execute(const CxVector& x, CxVector& y, int sign) {
  const int n = static_cast<int>(x.size());
  y.resize(n);
  fftw_plan p = PlanCache::instance().get(n, sign);
  fftw_execute_dft(p,
                   reinterpret_cast<fftw_complex*>(const_cast<Complex*>(x.data())),
                   reinterpret_cast<fftw_complex*>(y.data()));
  y *= 1.0 / std::sqrt(static_cast<double>(n));
}

}  // namespace

void forward(const CxVector& x, CxVector& y) { execute(x, y, FFTW_FORWARD); }

void adjoint(const CxVector& x, CxVector& y) { execute(x, y, FFTW_BACKWARD); }

Complex matrix_entry(Index n_points, Index row, Index col) {
  const double angle = -2.0 * M_PI * static_cast<double>((row * col) % n_points) /
                       static_cast<double>(n_points);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_points));
  return Complex(scale * std::cos(angle), scale * std::sin(angle));
}

}  // namespace phaselab::dft
