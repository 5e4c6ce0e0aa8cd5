// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "phaselab/common.hpp"

namespace phaselab::dft {

/// y = F x where F is the unitary (normalized) N-point DFT.
void forward(const CxVector& x, CxVector& y);

/// y = F^H x.
void adjoint(const CxVector& x, CxVector& y);

/// Entry (r, c) of the unitary DFT matrix.
Complex matrix_entry(Index n_points, Index row, Index col);

}  // namespace phaselab::dft
