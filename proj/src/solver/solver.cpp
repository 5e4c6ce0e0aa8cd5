// SPDX-License-Identifier: Apache-2.0
//
// ONE-L1 solves min ||x||_1 s.t. Phi x = d, Gamma(d) = b with an augmented
// Lagrangian on the expanded unitary system. With Phi unitary and the
// multiplier initialized at zero, the tail entries of d and y never feed back
// into the x iterates (Phi^H of the tail part collapses to (I - A^H A) x), so
// the iteration is run in its reduced A-space form:
//
//   x   <- S_{1/mu}( x + A^H(b - A x + y/mu) )   [d-step + x-step]
//   y   <- y + mu (b - A x)
//   mu  <- r mu
//
// x0 = 0, y0 = 0. The Exact variant repeats the first line to tolerance
// before each multiplier update. Iterates are identical to the explicit-Phi
// recursion; tests check this against a dense reference.

#include "phaselab/solver/solver.hpp"

#include <algorithm>
#include <cmath>

#include "phaselab/errors.hpp"
#include "phaselab/kernels/kernels.hpp"

namespace phaselab {

namespace {

constexpr double kMuCap = 1e250;    // beyond this 1/mu is numerically zero
constexpr double kTiny = 1e-300;

struct AlmParams {
  SolverVariant variant;
  double r;
  double mu0;
  int outer_max;
  int inner_max;
  double inner_tol;
  double stop_tol;
};

struct ComplexRule {
  using Vec = CxVector;
  void threshold(const Vec& in, Vec& out, double eps) const {
    kernels::soft_threshold_complex(in.data(), out.data(),
                                    static_cast<std::size_t>(in.size()), eps);
  }
  double max_unit(const Vec& v) const {
    double m = 0.0;
    for (Index i = 0; i < v.size(); ++i) m = std::max(m, std::abs(v[i]));
    return m;
  }
  static double norm2sq(const Vec& v) {
    return kernels::sum_abs2_complex(v.data(), static_cast<std::size_t>(v.size()));
  }
  static double diff2sq(const Vec& a, const Vec& b) {
    return kernels::sum_abs2_diff_complex(a.data(), b.data(),
                                          static_cast<std::size_t>(a.size()));
  }
};

struct RealRule {
  using Vec = RealVector;
  void threshold(const Vec& in, Vec& out, double eps) const {
    kernels::soft_threshold_real(in.data(), out.data(),
                                 static_cast<std::size_t>(in.size()), eps);
  }
  double max_unit(const Vec& v) const { return v.cwiseAbs().maxCoeff(); }
  static double norm2sq(const Vec& v) {
    return kernels::sum_abs2_real(v.data(), static_cast<std::size_t>(v.size()));
  }
  static double diff2sq(const Vec& a, const Vec& b) {
    return kernels::sum_abs2_diff_real(a.data(), b.data(),
                                       static_cast<std::size_t>(a.size()));
  }
};

// Stacked (u; v) vector; unit j is the pair (x[j], x[half + j]).
struct Block2Rule {
  using Vec = RealVector;
  Index half;
  void threshold(const Vec& in, Vec& out, double eps) const {
    kernels::block_soft_threshold_split(in.data(), in.data() + half, out.data(),
                                        out.data() + half,
                                        static_cast<std::size_t>(half), eps);
  }
  double max_unit(const Vec& v) const {
    double m = 0.0;
    for (Index j = 0; j < half; ++j)
      m = std::max(m, std::sqrt(v[j] * v[j] + v[half + j] * v[half + j]));
    return m;
  }
  static double norm2sq(const Vec& v) { return RealRule::norm2sq(v); }
  static double diff2sq(const Vec& a, const Vec& b) { return RealRule::diff2sq(a, b); }
};

struct ComplexOpView {
  const SensingOperator& op;
  Index dim() const { return op.cols(); }
  void forward(const CxVector& x, CxVector& out) const { out = op.apply(x); }
  void adjoint(const CxVector& v, CxVector& out) const { out = op.apply_adjoint(v); }
};

// A_r = [[Re A, -Im A], [Im A, Re A]] acting on stacked (Re x; Im x),
// applied through the complex operator.
struct RealStackedOpView {
  const SensingOperator& op;
  Index dim() const { return 2 * op.cols(); }
  void forward(const RealVector& xr, RealVector& out) const {
    const Index N = op.cols(), n = op.rows();
    CxVector z(N);
    for (Index j = 0; j < N; ++j) z[j] = Complex(xr[j], xr[N + j]);
    CxVector w = op.apply(z);
    out.resize(2 * n);
    for (Index i = 0; i < n; ++i) {
      out[i] = w[i].real();
      out[n + i] = w[i].imag();
    }
  }
  void adjoint(const RealVector& vr, RealVector& out) const {
    const Index N = op.cols(), n = op.rows();
    CxVector c(n);
    for (Index i = 0; i < n; ++i) c[i] = Complex(vr[i], vr[n + i]);
    CxVector z = op.apply_adjoint(c);
    out.resize(2 * N);
    for (Index j = 0; j < N; ++j) {
      out[j] = z[j].real();
      out[N + j] = z[j].imag();
    }
  }
};

template <class Vec>
struct AlmOutcome {
  Vec x;
  int outer = 0;
  int inner_total = 0;
  double feas = 0.0;
  bool converged = false;
};

template <class Op, class Rule>
AlmOutcome<typename Rule::Vec> run_alm(const Op& op, const typename Rule::Vec& b,
                                       const AlmParams& p, const Rule& rule) {
  using Vec = typename Rule::Vec;
  const Index N = op.dim();
  const double norm_b = std::sqrt(std::max(Rule::norm2sq(b), kTiny));

  Vec x = Vec::Zero(N);
  Vec y = Vec::Zero(b.size());
  Vec ax = Vec::Zero(b.size());  // A x, maintained across steps
  Vec residual(b.size()), g(N), x_next(N), atv(N);

  double mu = p.mu0;
  AlmOutcome<Vec> out;

  for (int t = 1; t <= p.outer_max; ++t) {
    Vec x_outer_prev = x;
    const int inner_limit = p.variant == SolverVariant::Exact ? p.inner_max : 1;
    for (int j = 0; j < inner_limit; ++j) {
      residual = b - ax + y / mu;
      op.adjoint(residual, atv);
      g = x + atv;
      rule.threshold(g, x_next, 1.0 / mu);
      ++out.inner_total;
      double inner_change = Rule::diff2sq(x_next, x);
      double inner_scale = std::max(Rule::norm2sq(x_next), kTiny);
      x.swap(x_next);
      op.forward(x, ax);
      if (p.variant == SolverVariant::Exact &&
          inner_change <= p.inner_tol * p.inner_tol * inner_scale)
        break;
    }
    residual = b - ax;
    y += mu * residual;
    out.outer = t;
    out.feas = std::sqrt(Rule::norm2sq(residual)) / norm_b;
    double rel_change = std::sqrt(Rule::diff2sq(x, x_outer_prev)) /
                        std::sqrt(std::max(Rule::norm2sq(x), kTiny));
    if (!std::isfinite(out.feas) || !std::isfinite(rel_change))
      throw NumericalError("ONE-L1 iterate overflowed", t);
    if (rel_change < p.stop_tol && out.feas < p.stop_tol) {
      out.converged = true;
      break;
    }
    mu = std::min(mu * p.r, kMuCap);
  }
  out.x = std::move(x);
  return out;
}

template <class Rule, class Op>
AlmParams resolve_params(const SolverConfig& cfg, const Op& op,
                         const typename Rule::Vec& b, const Rule& rule,
                         double delta) {
  AlmParams p;
  p.variant = cfg.variant;
  if (cfg.r) {
    if (*cfg.r <= 1.0) throw InputError("SolverConfig: r must exceed 1");
    p.r = *cfg.r;
  } else {
    p.r = default_growth_factor(cfg.variant, delta);
  }
  if (cfg.mu0) {
    if (*cfg.mu0 <= 0.0) throw InputError("SolverConfig: mu0 must be positive");
    p.mu0 = *cfg.mu0;
  } else {
    typename Rule::Vec g0(op.dim());
    op.adjoint(b, g0);
    double m = rule.max_unit(g0);
    p.mu0 = m > 0.0 ? 1.0 / (0.9 * m) : 1.0;
  }
  if (cfg.outer_max < 1) throw InputError("SolverConfig: outer_max must be >= 1");
  if (cfg.inner_max < 1) throw InputError("SolverConfig: inner_max must be >= 1");
  if (!(cfg.stop_tol > 0.0) || !(cfg.inner_tol > 0.0))
    throw InputError("SolverConfig: tolerances must be positive");
  p.outer_max = cfg.outer_max;
  p.inner_max = cfg.inner_max;
  p.inner_tol = cfg.inner_tol;
  p.stop_tol = cfg.stop_tol;
  return p;
}

// Cheap partial-orthonormality guard: A A^H b should reproduce b.
void check_operator(const SparseInstance& inst) {
  if (inst.op.kind() == SensingOperator::Kind::SubsampledDft) return;
  CxVector w = inst.op.apply(inst.op.apply_adjoint(inst.b));
  double nb = std::sqrt(std::max(
      kernels::sum_abs2_complex(inst.b.data(), static_cast<std::size_t>(inst.b.size())),
      kTiny));
  if (std::sqrt(kernels::sum_abs2_diff_complex(
          w.data(), inst.b.data(), static_cast<std::size_t>(inst.b.size()))) >
      1e-6 * nb)
    throw ContractError("solve: operator is not partially orthonormal");
}

double complex_l1(const CxVector& x) {
  return kernels::l1_norm_complex(x.data(), static_cast<std::size_t>(x.size()));
}

CxVector reassemble(const RealVector& xr, Index N) {
  CxVector x(N);
  for (Index j = 0; j < N; ++j) x[j] = Complex(xr[j], xr[N + j]);
  return x;
}

RealVector stack(const CxVector& v) {
  const Index n = v.size();
  RealVector out(2 * n);
  for (Index i = 0; i < n; ++i) {
    out[i] = v[i].real();
    out[n + i] = v[i].imag();
  }
  return out;
}

template <class Rule>
SolverResult solve_on_real_system(const SparseInstance& inst, const SolverConfig& cfg,
                                  const Rule& rule) {
  check_operator(inst);
  RealStackedOpView view{inst.op};
  RealVector br = stack(inst.b);
  AlmParams p = resolve_params(cfg, view, br, rule,
                               static_cast<double>(inst.n) / static_cast<double>(inst.N));
  auto alm = run_alm(view, br, p, rule);
  SolverResult res;
  res.x_hat = reassemble(alm.x, inst.N);
  res.outer_iters = alm.outer;
  res.total_inner_iters = alm.inner_total;
  res.feasibility_residual = alm.feas;
  res.l1_value = complex_l1(res.x_hat);
  res.converged = alm.converged;
  return res;
}

}  // namespace

double default_growth_factor(SolverVariant variant, double delta) {
  return variant == SolverVariant::Exact ? 1.0 + delta
                                         : std::min(1.0 + 0.04 * delta, 1.02);
}

Complex soft_threshold(Complex w, double eps) {
  Complex out;
  kernels::scalar::soft_threshold_complex(&w, &out, 1, eps);
  return out;
}

std::pair<double, double> block_soft_threshold(std::pair<double, double> u, double eps) {
  double ou, ov;
  kernels::scalar::block_soft_threshold_split(&u.first, &u.second, &ou, &ov, 1, eps);
  return {ou, ov};
}

SolverResult solve(const SparseInstance& inst, const SolverConfig& cfg) {
  if (cfg.threshold_rule != ThresholdRule::ComplexScalar)
    throw InputError("solve: threshold_rule must be ComplexScalar");
  check_operator(inst);
  ComplexOpView view{inst.op};
  ComplexRule rule;
  AlmParams p = resolve_params(cfg, view, inst.b, rule,
                               static_cast<double>(inst.n) / static_cast<double>(inst.N));
  auto alm = run_alm(view, inst.b, p, rule);
  SolverResult res;
  res.x_hat = std::move(alm.x);
  res.outer_iters = alm.outer;
  res.total_inner_iters = alm.inner_total;
  res.feasibility_residual = alm.feas;
  res.l1_value = complex_l1(res.x_hat);
  res.converged = alm.converged;
  return res;
}

SolverResult solve_indirect(const SparseInstance& inst, const SolverConfig& cfg) {
  if (cfg.threshold_rule == ThresholdRule::Block2)
    throw InputError("solve_indirect: use solve_block2 for the Block2 rule");
  return solve_on_real_system(inst, cfg, RealRule{});
}

SolverResult solve_block2(const SparseInstance& inst, const SolverConfig& cfg) {
  if (cfg.threshold_rule == ThresholdRule::RealScalar)
    throw InputError("solve_block2: threshold_rule RealScalar names the indirect solver");
  return solve_on_real_system(inst, cfg, Block2Rule{inst.N});
}

}  // namespace phaselab
