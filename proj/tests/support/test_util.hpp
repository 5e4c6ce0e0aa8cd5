// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "phaselab/common.hpp"
#include "phaselab/rng.hpp"

namespace phaselab::testsupport {

inline CxVector random_cx_vector(Index n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  CxVector v(n);
  for (Index i = 0; i < n; ++i)
    v[i] = Complex(rng.next_gaussian(), rng.next_gaussian());
  return v;
}

inline RealVector random_real_vector(Index n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  RealVector v(n);
  for (Index i = 0; i < n; ++i) v[i] = rng.next_gaussian();
  return v;
}

inline CxMatrix random_cx_matrix(Index rows, Index cols, std::uint64_t seed) {
  SplitMix64 rng(seed);
  CxMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i)
      m(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
  return m;
}

}  // namespace phaselab::testsupport
