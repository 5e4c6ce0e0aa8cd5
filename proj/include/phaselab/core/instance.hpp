// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "phaselab/common.hpp"
#include "phaselab/core/operator.hpp"

namespace phaselab {

/// One random basis-pursuit problem: operator, k-sparse ground truth and the
/// measurements b = A x_true, together with the grid coordinates and the
/// seed every random draw was derived from.
struct SparseInstance {
  SensingOperator op;
  CxVector x_true;
  CxVector b;
  Index N = 0;
  Index n = 0;
  Index k = 0;
  double delta = 0.0;
  double rho = 0.0;
  std::uint64_t seed = 0;
};

}  // namespace phaselab
