// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace phaselab {

/// Bad argument supplied by the caller (dimension mismatch, out-of-range value).
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An object violates a contract it was required to satisfy
/// (e.g. an operator that is not partially orthonormal).
struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Iteration produced a non-finite value.
struct NumericalError : std::runtime_error {
  NumericalError(const std::string& what, long iteration)
      : std::runtime_error(what + " (iteration " + std::to_string(iteration) + ")"),
        iteration(iteration) {}
  long iteration;
};

/// A random matrix draw was numerically rank deficient; the caller redraws.
struct DegenerateEnsembleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Statistical estimation could not produce a usable result.
struct EstimationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File or stream failure.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace phaselab
