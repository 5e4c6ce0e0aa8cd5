// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace phaselab::theory {

enum class CurveKind { RealL1, ComplexL1 };

std::string to_string(CurveKind k);
CurveKind curve_kind_from_string(const std::string& s);

/// Asymptotic weak phase transition of real-valued l1 recovery at sampling
/// ratio delta in (0,1):
///   rho(delta) = max_{z>=0} [1 - psi(z)/delta] / [1 + z^2 - psi(z)],
/// psi(z) = E[((|G| - z)^+)^2] for standard real Gaussian G, in closed form
/// through the Gaussian density and tail. Deterministic 1-D search, accurate
/// to better than 1e-6. Values are memoized.
double real_transition(double delta);

/// Same maximization with psi replaced by its complex counterpart
///   psi_C(z) = E[((|g| - z)^+)^2],   g standard circular complex Gaussian,
/// where |g| has density 2 m exp(-m^2) (a scaled 2-dof chi law). psi_C is
/// evaluated by adaptive quadrature on [z, z+12] to 1e-8 absolute. The curve
/// is validated against this artifact's own empirical transitions, not taken
/// as ground truth.
double complex_transition(double delta);

struct TransitionCurve {
  CurveKind kind = CurveKind::RealL1;
  std::vector<std::pair<double, double>> samples;  // (delta, rho), delta ascending
};

/// Samples a curve on {delta_min, delta_min + step, ...} up to delta_max.
TransitionCurve sample_curve(CurveKind kind, double delta_min, double delta_max,
                             double step);

// Exposed for the quadrature/closed-form cross checks.
double psi_real(double z);
double psi_complex(double z);

}  // namespace phaselab::theory
