// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "phaselab/common.hpp"

namespace phaselab::detail {

struct ThinQr {
  CxMatrix q;  // m x k, orthonormal columns
  CxMatrix r;  // k x k, upper triangular
};

/// Householder QR of an m x k matrix (m >= k), thin factors.
ThinQr thin_qr(CxMatrix m);

struct FullQr {
  CxMatrix q;        // m x m unitary; first k columns span the input range
  CxVector r_diag;   // diagonal of the triangular factor (length k)
};

FullQr full_qr(CxMatrix m);

}  // namespace phaselab::detail
