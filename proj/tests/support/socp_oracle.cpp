// SPDX-License-Identifier: Apache-2.0
#include "socp_oracle.hpp"

#include <cmath>
#include <vector>

#include "phaselab/errors.hpp"

namespace phaselab::testsupport {

namespace {

// Variables w = (u; v; t) in R^{3N}: x_j = u_j + i v_j, cone |(u_j,v_j)| <= t_j.
// Equality constraints A_r (u; v) = b_r.

struct Problem {
  RealMatrix aeq;  // 2n x 3N
  RealVector beq;  // 2n
  Index N;
};

double cone_d(const RealVector& w, Index N, Index j) {
  double u = w[j], v = w[N + j], t = w[2 * N + j];
  return t * t - u * u - v * v;
}

bool strictly_feasible(const RealVector& w, Index N) {
  for (Index j = 0; j < N; ++j)
    if (!(w[2 * N + j] > 0.0) || !(cone_d(w, N, j) > 0.0)) return false;
  return true;
}

double barrier_value(const RealVector& w, Index N, double tau) {
  double f = 0.0;
  for (Index j = 0; j < N; ++j) {
    f += tau * w[2 * N + j];
    f -= std::log(cone_d(w, N, j));
  }
  return f;
}

// One centering: damped Newton with equality constraints eliminated through
// the Schur complement of the block-diagonal barrier Hessian.
int center(const Problem& p, RealVector& w, double tau) {
  const Index N = p.N;
  const Index m = p.aeq.rows();
  int steps = 0;
  for (int it = 0; it < 80; ++it) {
    RealVector grad(3 * N);
    std::vector<Eigen::Matrix3d> hinv(static_cast<std::size_t>(N));
    for (Index j = 0; j < N; ++j) {
      double u = w[j], v = w[N + j], t = w[2 * N + j];
      double d = t * t - u * u - v * v;
      grad[j] = 2.0 * u / d;
      grad[N + j] = 2.0 * v / d;
      grad[2 * N + j] = tau - 2.0 * t / d;
      Eigen::Vector3d dd(-2.0 * u, -2.0 * v, 2.0 * t);
      Eigen::Matrix3d h = dd * dd.transpose() / (d * d);
      h(0, 0) += 2.0 / d;
      h(1, 1) += 2.0 / d;
      h(2, 2) -= 2.0 / d;
      hinv[static_cast<std::size_t>(j)] = h.inverse();
    }

    auto apply_hinv = [&](const RealVector& r) {
      RealVector out(3 * N);
      for (Index j = 0; j < N; ++j) {
        Eigen::Vector3d rj(r[j], r[N + j], r[2 * N + j]);
        Eigen::Vector3d oj = hinv[static_cast<std::size_t>(j)] * rj;
        out[j] = oj[0];
        out[N + j] = oj[1];
        out[2 * N + j] = oj[2];
      }
      return out;
    };

    RealVector hinv_g = apply_hinv(grad);
    RealMatrix hinv_at(3 * N, m);
    for (Index c = 0; c < m; ++c)
      hinv_at.col(c) = apply_hinv(p.aeq.row(c).transpose());
    RealMatrix schur = p.aeq * hinv_at;
    RealVector nu = schur.ldlt().solve(-(p.aeq * hinv_g));
    RealVector dw = -(hinv_g + hinv_at * nu);

    double decrement = -grad.dot(dw);
    ++steps;
    if (decrement < 0.0) decrement = 0.0;
    if (decrement * 0.5 < 1e-13) return steps;

    double f0 = barrier_value(w, N, tau);
    double alpha = 1.0;
    for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
      RealVector cand = w + alpha * dw;
      if (!strictly_feasible(cand, N)) continue;
      if (barrier_value(cand, N, tau) <= f0 - 0.25 * alpha * decrement) {
        w = cand;
        break;
      }
    }
  }
  return steps;
}

}  // namespace

SocpSolution solve_complex_bp_socp(const CxMatrix& a, const CxVector& b) {
  const Index n = a.rows(), N = a.cols();
  Problem p;
  p.N = N;
  p.aeq = RealMatrix::Zero(2 * n, 3 * N);
  p.aeq.block(0, 0, n, N) = a.real();
  p.aeq.block(0, N, n, N) = -a.imag();
  p.aeq.block(n, 0, n, N) = a.imag();
  p.aeq.block(n, N, n, N) = a.real();
  p.beq.resize(2 * n);
  p.beq.head(n) = b.real();
  p.beq.tail(n) = b.imag();

  // Least-norm feasible start (no orthonormality assumed).
  RealMatrix ar = p.aeq.leftCols(2 * N);
  RealVector xr = ar.transpose() * (ar * ar.transpose()).ldlt().solve(p.beq);

  RealVector w(3 * N);
  w.head(2 * N) = xr;
  for (Index j = 0; j < N; ++j)
    w[2 * N + j] = std::sqrt(xr[j] * xr[j] + xr[N + j] * xr[N + j]) + 1.0;

  if (!strictly_feasible(w, N))
    throw NumericalError("socp oracle: infeasible start", 0);

  SocpSolution sol;
  double tau = 1.0;
  const double target_gap = 1e-9;
  while (true) {
    sol.newton_steps += center(p, w, tau);
    sol.gap_bound = 2.0 * static_cast<double>(N) / tau;
    if (sol.gap_bound <= target_gap) break;
    tau *= 10.0;
  }

  sol.x.resize(N);
  for (Index j = 0; j < N; ++j) sol.x[j] = Complex(w[j], w[N + j]);
  sol.l1_value = 0.0;
  for (Index j = 0; j < N; ++j) sol.l1_value += std::abs(sol.x[j]);
  return sol;
}

}  // namespace phaselab::testsupport
