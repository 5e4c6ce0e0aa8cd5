// SPDX-License-Identifier: Apache-2.0
#include "phaselab/theory/transition.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "phaselab/errors.hpp"

namespace phaselab::theory {

namespace {

constexpr double kPi = 3.14159265358979323846;

double gauss_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi); }
double gauss_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

// Adaptive Simpson with absolute tolerance.
template <class F>
double simpson(const F& f, double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(f, a, m, fa, flm, fm);
  double right = simpson(f, m, b, fm, frm, fb);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double integrate(const F& f, double a, double b, double tol) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = simpson(f, a, b, fa, fm, fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

double objective(double z, double delta, double psi) {
  double num = 1.0 - psi / delta;
  double den = 1.0 + z * z - psi;
  return num / den;
}

template <class Psi>
double maximize(double delta, const Psi& psi) {
  // Coarse bracket on [1e-4, 12], then golden-section refinement. The
  // objective has a single interior maximum on this range for delta in (0,1).
  const double lo = 1e-4, hi = 12.0;
  const int grid = 2401;
  double best_z = lo, best_v = -1e300;
  for (int i = 0; i < grid; ++i) {
    double z = lo + (hi - lo) * static_cast<double>(i) / (grid - 1);
    double v = objective(z, delta, psi(z));
    if (v > best_v) {
      best_v = v;
      best_z = z;
    }
  }
  const double h = (hi - lo) / (grid - 1);
  double a = std::max(lo, best_z - h), b = std::min(hi, best_z + h);
  const double invphi = 0.6180339887498948482;
  double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
  double f1 = objective(x1, delta, psi(x1)), f2 = objective(x2, delta, psi(x2));
  while (b - a > 1e-10) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = objective(x2, delta, psi(x2));
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = objective(x1, delta, psi(x1));
    }
  }
  return std::max(f1, f2);
}

double memoized(std::map<double, double>& cache, std::mutex& mutex, double delta,
                double (*compute)(double)) {
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(delta);
    if (it != cache.end()) return it->second;
  }
  double value = compute(delta);
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(delta, value);
  return value;
}

double compute_real(double delta) {
  return maximize(delta, [](double z) { return psi_real(z); });
}

double compute_complex(double delta) {
  return maximize(delta, [](double z) { return psi_complex(z); });
}

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw InputError("transition: delta must lie in (0, 1)");
}

}  // namespace

double psi_real(double z) {
  // E[((|G|-z)^+)^2] = 2[(1+z^2) Q(z) - z phi(z)] for G ~ N(0,1).
  return 2.0 * ((1.0 + z * z) * gauss_tail(z) - z * gauss_pdf(z));
}

double psi_complex(double z) {
  // Magnitude density of a standard circular complex Gaussian: 2 m exp(-m^2).
  auto f = [z](double m) {
    double d = m - z;
    return d * d * 2.0 * m * std::exp(-m * m);
  };
  return integrate(f, z, z + 12.0, 1e-8);
}

double real_transition(double delta) {
  check_delta(delta);
  static std::map<double, double> cache;
  static std::mutex mutex;
  return memoized(cache, mutex, delta, &compute_real);
}

double complex_transition(double delta) {
  check_delta(delta);
  static std::map<double, double> cache;
  static std::mutex mutex;
  return memoized(cache, mutex, delta, &compute_complex);
}

std::string to_string(CurveKind k) {
  return k == CurveKind::RealL1 ? "real-l1" : "complex-l1";
}

CurveKind curve_kind_from_string(const std::string& s) {
  if (s == "real-l1") return CurveKind::RealL1;
  if (s == "complex-l1") return CurveKind::ComplexL1;
  throw InputError("unknown curve kind: " + s);
}

TransitionCurve sample_curve(CurveKind kind, double delta_min, double delta_max,
                             double step) {
  if (!(step > 0.0) || !(delta_min <= delta_max))
    throw InputError("sample_curve: bad range");
  TransitionCurve curve;
  curve.kind = kind;
  for (int i = 0;; ++i) {
    double d = delta_min + step * i;
    if (d > delta_max + 1e-12) break;
    d = std::min(d, delta_max);
    double rho = kind == CurveKind::RealL1 ? real_transition(d) : complex_transition(d);
    curve.samples.emplace_back(d, rho);
  }
  return curve;
}

}  // namespace phaselab::theory
