// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <optional>
#include <utility>

#include "phaselab/common.hpp"
#include "phaselab/core/instance.hpp"

namespace phaselab {

enum class SolverVariant {
  Exact,    // inner alternation run to tolerance before each multiplier update
  Relaxed,  // a single alternation per multiplier update
};

enum class ThresholdRule {
  ComplexScalar,  // magnitude shrinkage of complex entries
  RealScalar,     // sign shrinkage of real entries (indirect solver)
  Block2,         // joint shrinkage of (real, imag) pairs of the stacked system
};

struct SolverConfig {
  SolverVariant variant = SolverVariant::Relaxed;
  // Penalty growth factor; > 1. Defaults to 1 + delta (Exact) or
  // min(1 + 0.04 delta, 1.02) (Relaxed).
  std::optional<double> r;
  // Initial penalty; defaults to 1 / (0.9 max threshold unit of A^H b) so the
  // first shrinkage keeps at least one coordinate alive.
  std::optional<double> mu0;
  int outer_max = 5000;
  int inner_max = 100;       // Exact only
  double inner_tol = 1e-6;   // Exact only
  double stop_tol = 1e-8;
  ThresholdRule threshold_rule = ThresholdRule::ComplexScalar;
};

struct SolverResult {
  CxVector x_hat;
  int outer_iters = 0;
  int total_inner_iters = 0;
  double feasibility_residual = 0.0;  // ||A x_hat - b||_2 / ||b||_2
  double l1_value = 0.0;              // sum_j |x_hat_j| (complex magnitudes)
  bool converged = false;
};

/// sgn(w) (|w| - eps)^+ ; the proximal map of eps * |.| on the complex plane.
Complex soft_threshold(Complex w, double eps);

/// u (1 - eps / ||u||_2)^+ on a pair of reals. Equals soft_threshold under
/// the (real, imag) <-> 2-block identification.
std::pair<double, double> block_soft_threshold(std::pair<double, double> u, double eps);

/// ONE-L1 on the complex system. Requires cfg.threshold_rule == ComplexScalar.
SolverResult solve(const SparseInstance& inst, const SolverConfig& cfg);

/// The same machinery on the real 2n x 2N reformulation with entrywise real
/// shrinkage: minimizes ||x_r||_1 subject to A_r x_r = b_r, ignoring the
/// block structure. Returns the complex signal reassembled from x_r.
SolverResult solve_indirect(const SparseInstance& inst, const SolverConfig& cfg);

/// The real reformulation with block-2 shrinkage. Algebraically identical to
/// solve(); kept as a separate route for the equivalence checks.
SolverResult solve_block2(const SparseInstance& inst, const SolverConfig& cfg);

/// Default growth factor for a variant at sampling ratio delta.
double default_growth_factor(SolverVariant variant, double delta);

}  // namespace phaselab
