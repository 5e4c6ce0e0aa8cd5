// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "phaselab/common.hpp"
#include "phaselab/core/instance.hpp"
#include "phaselab/core/operator.hpp"

namespace phaselab {

enum class EnsembleKind {
  PartialFourier,
  ComplexGaussian,
  ComplexBernoulli,
  ComplexTernary,
  RealGaussian,  // real A, complex x: the jointly-sparse / MMV variant
};

enum class SignalModel {
  CircularGaussian,
  UnitModulus,
  EqualRealImag,
};

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::PartialFourier;
  SignalModel signal_model = SignalModel::CircularGaussian;
};

std::string to_string(EnsembleKind k);
std::string to_string(SignalModel m);
EnsembleKind ensemble_kind_from_string(const std::string& s);
SignalModel signal_model_from_string(const std::string& s);

/// i.i.d. draw from the named ensemble. PartialFourier yields a subsampled
/// unitary DFT operator (n distinct rows uniform without replacement); the
/// other kinds yield a raw dense matrix that generally still needs
/// orthonormalization. Entries are drawn in column-major order.
std::variant<CxMatrix, SensingOperator> draw_matrix(const EnsembleSpec& spec, Index n,
                                                    Index N, std::uint64_t seed);

/// Left-multiplies the system A x = b by the invertible triangular transform
/// from a QR factorization of A^H so the result satisfies A~ A~^H = I with an
/// identical solution set. Throws DegenerateEnsembleError when A is
/// numerically rank deficient (smallest triangular diagonal < 1e-10 times the
/// largest); the caller redraws.
std::pair<SensingOperator, CxVector> orthonormalize(const CxMatrix& a,
                                                    const CxVector& b);

/// k-sparse signal with uniformly drawn support and nonzeros per the model.
CxVector draw_signal(SignalModel model, Index N, Index k, std::uint64_t seed);

/// n = ceil(delta N), k = ceil(rho n); draws the operator and signal and sets
/// b = A x_true. A pure function of (spec, N, delta, rho, seed).
SparseInstance make_instance(const EnsembleSpec& spec, Index N, double delta,
                             double rho, std::uint64_t seed);

}  // namespace phaselab
