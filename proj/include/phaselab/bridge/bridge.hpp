// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "phaselab/common.hpp"
#include "phaselab/core/instance.hpp"

namespace phaselab {

/// The real 2n x 2N rewriting of the complex system:
///   A_r = [[Re A, -Im A], [Im A, Re A]],  x_r = (Re x; Im x),  b_r = (Re b; Im b).
/// block_permutation maps interleaved positions to stacked indices: entry 2j
/// is j and entry 2j+1 is N+j, so (Re x_j, Im x_j) forms contiguous 2-blocks
/// after permutation. The permutation is kept symbolic; A_r is never
/// physically reshuffled.
struct RealReformulation {
  RealMatrix a_r;
  RealVector x_r;
  RealVector b_r;
  std::vector<Index> block_permutation;
};

RealReformulation to_real_system(const SparseInstance& inst);

/// Sum over blocks j of ||(x_r[perm[2j]], x_r[perm[2j+1]])||_2. Equals the
/// complex l1 norm under the standard identification.
double l21_norm(const RealVector& x_r, const std::vector<Index>& block_permutation);

/// Null-space pairing check: for random h = w + iv with A h = 0, both the
/// (w; v) stack and the (-v; w) stack must lie in the null space of A_r.
struct NullSpaceReport {
  bool vacuous = false;  // n = N, nothing to check
  int trials = 0;
  double max_residual_stack = 0.0;    // max over trials of ||A_r (w; v)|| / ||h||
  double max_residual_rotated = 0.0;  // same for (-v; w)
};

NullSpaceReport null_space_structure_check(const SensingOperator& op, int trials,
                                           std::uint64_t seed = 0x706169724E53ULL);

}  // namespace phaselab
