// SPDX-License-Identifier: Apache-2.0
#include "phaselab/experiment/glm.hpp"

#include <cmath>

#include "phaselab/errors.hpp"

namespace phaselab {

LogisticFit fit_logistic_irls(const std::vector<BinomialCell>& cells,
                              int max_iterations, double tol) {
  if (cells.size() < 2)
    throw EstimationError("fit_logistic_irls: need at least two cells");
  for (const auto& c : cells)
    if (c.trials <= 0.0 || c.successes < 0.0 || c.successes > c.trials)
      throw EstimationError("fit_logistic_irls: malformed cell counts");

  double b0 = 0.0, b1 = 0.0;
  LogisticFit fit;
  for (int it = 1; it <= max_iterations; ++it) {
    double s00 = 0.0, s01 = 0.0, s11 = 0.0, t0 = 0.0, t1 = 0.0;
    for (const auto& c : cells) {
      double eta = b0 + b1 * c.x;
      double p = 1.0 / (1.0 + std::exp(-eta));
      p = std::min(std::max(p, 1e-12), 1.0 - 1e-12);
      double w = c.trials * p * (1.0 - p);
      double z = eta + (c.successes - c.trials * p) / w;
      s00 += w;
      s01 += w * c.x;
      s11 += w * c.x * c.x;
      t0 += w * z;
      t1 += w * z * c.x;
    }
    double det = s00 * s11 - s01 * s01;
    if (!(det > 1e-300))
      throw EstimationError("fit_logistic_irls: degenerate design");
    double nb0 = (s11 * t0 - s01 * t1) / det;
    double nb1 = (s00 * t1 - s01 * t0) / det;
    double step = std::max(std::fabs(nb0 - b0), std::fabs(nb1 - b1));
    b0 = nb0;
    b1 = nb1;
    fit.iterations = it;
    if (!std::isfinite(b0) || !std::isfinite(b1))
      throw EstimationError("fit_logistic_irls: diverged");
    if (step < tol) {
      fit.intercept = b0;
      fit.slope = b1;
      fit.se_intercept = std::sqrt(s11 / det);
      fit.se_slope = std::sqrt(s00 / det);
      return fit;
    }
  }
  throw EstimationError("fit_logistic_irls: no convergence within iteration limit");
}

}  // namespace phaselab
