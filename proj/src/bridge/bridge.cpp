// SPDX-License-Identifier: Apache-2.0
#include "phaselab/bridge/bridge.hpp"

#include <cmath>

#include "phaselab/errors.hpp"
#include "phaselab/rng.hpp"

namespace phaselab {

RealReformulation to_real_system(const SparseInstance& inst) {
  const Index n = inst.n, N = inst.N;
  CxMatrix a = inst.op.dense_matrix();

  RealReformulation out;
  out.a_r.resize(2 * n, 2 * N);
  out.a_r.topLeftCorner(n, N) = a.real();
  out.a_r.topRightCorner(n, N) = -a.imag();
  out.a_r.bottomLeftCorner(n, N) = a.imag();
  out.a_r.bottomRightCorner(n, N) = a.real();

  out.x_r.resize(2 * N);
  out.x_r.head(N) = inst.x_true.real();
  out.x_r.tail(N) = inst.x_true.imag();

  out.b_r.resize(2 * n);
  out.b_r.head(n) = inst.b.real();
  out.b_r.tail(n) = inst.b.imag();

  out.block_permutation.resize(2 * N);
  for (Index j = 0; j < N; ++j) {
    out.block_permutation[2 * j] = j;
    out.block_permutation[2 * j + 1] = N + j;
  }
  return out;
}

double l21_norm(const RealVector& x_r, const std::vector<Index>& block_permutation) {
  if (x_r.size() % 2 != 0 ||
      static_cast<Index>(block_permutation.size()) != x_r.size())
    throw InputError("l21_norm: stacked vector must have even length matching the permutation");
  double total = 0.0;
  for (Index j = 0; 2 * j < x_r.size(); ++j) {
    double u = x_r[block_permutation[2 * j]];
    double v = x_r[block_permutation[2 * j + 1]];
    total += std::sqrt(u * u + v * v);
  }
  return total;
}

NullSpaceReport null_space_structure_check(const SensingOperator& op, int trials,
                                           std::uint64_t seed) {
  if (trials < 1) throw InputError("null_space_structure_check: trials must be >= 1");
  NullSpaceReport report;
  report.trials = trials;
  const Index n = op.rows(), N = op.cols();
  if (n == N) {
    report.vacuous = true;
    return report;
  }

  CxMatrix a = op.dense_matrix();
  RealMatrix a_r(2 * n, 2 * N);
  a_r.topLeftCorner(n, N) = a.real();
  a_r.topRightCorner(n, N) = -a.imag();
  a_r.bottomLeftCorner(n, N) = a.imag();
  a_r.bottomRightCorner(n, N) = a.real();

  SplitMix64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    CxVector g(N);
    for (Index j = 0; j < N; ++j)
      g[j] = Complex(rng.next_gaussian(), rng.next_gaussian());
    // (I - A^H A) projects exactly onto the null space for A A^H = I.
    CxVector h = g - op.apply_adjoint(op.apply(g));
    double nh = h.norm();
    if (nh < 1e-12) continue;

    RealVector stack(2 * N), rotated(2 * N);
    stack.head(N) = h.real();
    stack.tail(N) = h.imag();
    rotated.head(N) = -h.imag();
    rotated.tail(N) = h.real();

    report.max_residual_stack =
        std::max(report.max_residual_stack, (a_r * stack).norm() / nh);
    report.max_residual_rotated =
        std::max(report.max_residual_rotated, (a_r * rotated).norm() / nh);
  }
  return report;
}

}  // namespace phaselab
