// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace phaselab {

struct BinomialCell {
  double x = 0.0;          // covariate (rho)
  double successes = 0.0;
  double trials = 0.0;
};

struct LogisticFit {
  double intercept = 0.0;
  double slope = 0.0;
  double se_intercept = 0.0;
  double se_slope = 0.0;
  int iterations = 0;
};

/// Binomial GLM with a logistic link fitted by iteratively reweighted least
/// squares; converges when both coefficient updates fall below tol in
/// absolute value. Throws EstimationError when the design is degenerate or
/// IRLS does not converge.
LogisticFit fit_logistic_irls(const std::vector<BinomialCell>& cells,
                              int max_iterations = 100, double tol = 1e-8);

}  // namespace phaselab
