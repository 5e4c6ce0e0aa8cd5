// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "phaselab/common.hpp"

namespace phaselab::testsupport {

struct SocpSolution {
  CxVector x;
  double l1_value = 0.0;
  int newton_steps = 0;
  double gap_bound = 0.0;  // barrier duality-gap bound at termination
};

/// Independent convex-programming route for complex basis pursuit:
/// second-order-cone formulation min sum t_j s.t. |x_j| <= t_j, A x = b,
/// solved by a feasible-start log-barrier Newton method on the real
/// reformulation. Shares no code with the ALM solvers.
SocpSolution solve_complex_bp_socp(const CxMatrix& a, const CxVector& b);

}  // namespace phaselab::testsupport
