// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

#include "phaselab/core/instance.hpp"
#include "phaselab/core/operator.hpp"
#include "phaselab/solver/solver.hpp"

namespace phaselab::testsupport {

// Direct transcription of the expanded-system recursion with an explicit
// unitary completion and a full-length multiplier: d-step, x-step(s), then
// y and mu updates. Pins the production solver's reduced A-space iteration.
inline SolverResult reference_expanded_solve(const SparseInstance& inst,
                                             const SolverConfig& cfg) {
  SensingOperator op = inst.op.has_completion() ? inst.op : complete_to_unitary(inst.op);
  const CxMatrix phi = op.completion_matrix();
  const Index N = inst.N, n = inst.n;

  const double delta = static_cast<double>(n) / static_cast<double>(N);
  double r = cfg.r ? *cfg.r : default_growth_factor(cfg.variant, delta);
  double mu;
  if (cfg.mu0) {
    mu = *cfg.mu0;
  } else {
    double m = 0.0;
    CxVector g0 = inst.op.apply_adjoint(inst.b);
    for (Index i = 0; i < N; ++i) m = std::max(m, std::abs(g0[i]));
    mu = m > 0.0 ? 1.0 / (0.9 * m) : 1.0;
  }

  CxVector x = CxVector::Zero(N);
  CxVector y = CxVector::Zero(N);
  CxVector d = CxVector::Zero(N);
  d.head(n) = inst.b;
  const double norm_b = std::max(inst.b.norm(), 1e-300);

  SolverResult res;
  for (int t = 1; t <= cfg.outer_max; ++t) {
    CxVector x_prev = x;
    const int inner_limit = cfg.variant == SolverVariant::Exact ? cfg.inner_max : 1;
    for (int j = 0; j < inner_limit; ++j) {
      CxVector phix = phi * x;
      d = phix - y / mu;
      d.head(n) = inst.b;
      CxVector g = phi.adjoint() * (d + y / mu);
      CxVector x_new(N);
      for (Index i = 0; i < N; ++i) x_new[i] = soft_threshold(g[i], 1.0 / mu);
      ++res.total_inner_iters;
      double change = (x_new - x).norm();
      double scale = std::max(x_new.norm(), 1e-300);
      x = x_new;
      if (cfg.variant == SolverVariant::Exact && change <= cfg.inner_tol * scale) break;
    }
    CxVector phix = phi * x;
    y += mu * (d - phix);
    res.outer_iters = t;
    res.feasibility_residual = (phix.head(n) - inst.b).norm() / norm_b;
    double rel = (x - x_prev).norm() / std::max(x.norm(), 1e-300);
    if (rel < cfg.stop_tol && res.feasibility_residual < cfg.stop_tol) {
      res.converged = true;
      break;
    }
    mu = std::min(mu * r, 1e250);
  }
  res.x_hat = x;
  res.l1_value = 0.0;
  for (Index i = 0; i < N; ++i) res.l1_value += std::abs(res.x_hat[i]);
  return res;
}

}  // namespace phaselab::testsupport
