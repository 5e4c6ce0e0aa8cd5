// SPDX-License-Identifier: Apache-2.0
#include "phaselab/ensembles/ensembles.hpp"

#include <cmath>
#include <iostream>
#include <numeric>

#include "../core/lapack_qr.hpp"
#include "phaselab/errors.hpp"
#include "phaselab/rng.hpp"

namespace phaselab {

namespace {

// Sub-stream tags so the matrix and signal draws of one instance never
// overlap even though they share the instance seed.
constexpr std::uint64_t kMatrixTag = 0x6D61747269780000ULL;
constexpr std::uint64_t kSignalTag = 0x7369676E616C0000ULL;

Index ceil_ratio(double ratio, Index count) {
  // Guard against 50.000000000000007-style artifacts of grid arithmetic.
  return static_cast<Index>(std::ceil(ratio * static_cast<double>(count) - 1e-9));
}

std::vector<Index> sample_without_replacement(Index population, Index draws,
                                              SplitMix64& rng) {
  std::vector<Index> idx(population);
  std::iota(idx.begin(), idx.end(), Index{0});
  for (Index i = 0; i < draws; ++i) {
    Index j = i + static_cast<Index>(rng.next_below(
                      static_cast<std::uint64_t>(population - i)));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(draws);
  return idx;
}

CxMatrix draw_dense(EnsembleKind kind, Index n, Index N, std::uint64_t seed) {
  SplitMix64 rng(seed);
  CxMatrix a(n, N);
  auto fill = [&](auto entry) {
    for (Index j = 0; j < N; ++j)
      for (Index i = 0; i < n; ++i) a(i, j) = entry();
  };
  switch (kind) {
    case EnsembleKind::ComplexGaussian:
      fill([&] { return Complex(rng.next_gaussian(), rng.next_gaussian()); });
      break;
    case EnsembleKind::ComplexBernoulli:
      fill([&] {
        return Complex(static_cast<double>(rng.next_below(2)),
                       static_cast<double>(rng.next_below(2)));
      });
      break;
    case EnsembleKind::ComplexTernary:
      fill([&] {
        return Complex(static_cast<double>(rng.next_below(3)) - 1.0,
                       static_cast<double>(rng.next_below(3)) - 1.0);
      });
      break;
    case EnsembleKind::RealGaussian:
      fill([&] { return Complex(rng.next_gaussian(), 0.0); });
      break;
    case EnsembleKind::PartialFourier:
      throw InputError("draw_dense: PartialFourier is not a dense ensemble");
  }
  return a;
}

}  // namespace

std::string to_string(EnsembleKind k) {
  switch (k) {
    case EnsembleKind::PartialFourier: return "fourier";
    case EnsembleKind::ComplexGaussian: return "gaussian";
    case EnsembleKind::ComplexBernoulli: return "bernoulli";
    case EnsembleKind::ComplexTernary: return "ternary";
    case EnsembleKind::RealGaussian: return "real-gaussian";
  }
  return "?";
}

std::string to_string(SignalModel m) {
  switch (m) {
    case SignalModel::CircularGaussian: return "circular-gaussian";
    case SignalModel::UnitModulus: return "unit-modulus";
    case SignalModel::EqualRealImag: return "equal-real-imag";
  }
  return "?";
}

EnsembleKind ensemble_kind_from_string(const std::string& s) {
  if (s == "fourier") return EnsembleKind::PartialFourier;
  if (s == "gaussian") return EnsembleKind::ComplexGaussian;
  if (s == "bernoulli") return EnsembleKind::ComplexBernoulli;
  if (s == "ternary") return EnsembleKind::ComplexTernary;
  if (s == "real-gaussian") return EnsembleKind::RealGaussian;
  throw InputError("unknown ensemble kind: " + s);
}

SignalModel signal_model_from_string(const std::string& s) {
  if (s == "circular-gaussian") return SignalModel::CircularGaussian;
  if (s == "unit-modulus") return SignalModel::UnitModulus;
  if (s == "equal-real-imag") return SignalModel::EqualRealImag;
  throw InputError("unknown signal model: " + s);
}

std::variant<CxMatrix, SensingOperator> draw_matrix(const EnsembleSpec& spec, Index n,
                                                    Index N, std::uint64_t seed) {
  if (n < 1 || n > N) throw InputError("draw_matrix: need 1 <= n <= N");
  if (spec.kind == EnsembleKind::PartialFourier) {
    SplitMix64 rng(seed);
    return SensingOperator::subsampled_dft(N, sample_without_replacement(N, n, rng));
  }
  return draw_dense(spec.kind, n, N, seed);
}

std::pair<SensingOperator, CxVector> orthonormalize(const CxMatrix& a,
                                                    const CxVector& b) {
  const Index n = a.rows(), N = a.cols();
  if (n < 1 || N < n) throw InputError("orthonormalize: need 1 <= n <= N");
  if (b.size() != n) throw InputError("orthonormalize: b has wrong length");

  detail::ThinQr f = detail::thin_qr(a.adjoint());
  RealVector diag_mag = f.r.diagonal().cwiseAbs();
  double dmax = diag_mag.maxCoeff();
  if (dmax <= 0.0 || diag_mag.minCoeff() < 1e-10 * dmax)
    throw DegenerateEnsembleError("orthonormalize: numerically rank-deficient matrix");

  // Phase-normalize so the triangular factor has a real positive diagonal;
  // the transform is then uniquely determined by A.
  CxVector phases(n);
  for (Index i = 0; i < n; ++i) phases[i] = f.r(i, i) / diag_mag[i];

  CxMatrix a_tilde = f.q.adjoint();
  for (Index i = 0; i < n; ++i) a_tilde.row(i) *= std::conj(phases[i]);

  // b~ = R'^{-H} b with R' = D^H R: solve R^H z = b, then scale by conj(D).
  CxVector z = f.r.adjoint().triangularView<Eigen::Lower>().solve(b);
  CxVector b_tilde = phases.conjugate().cwiseProduct(z);

  return {SensingOperator::dense(std::move(a_tilde)), std::move(b_tilde)};
}

CxVector draw_signal(SignalModel model, Index N, Index k, std::uint64_t seed) {
  if (k < 1 || k > N) throw InputError("draw_signal: need 1 <= k <= N");
  SplitMix64 rng(seed);
  std::vector<Index> support = sample_without_replacement(N, k, rng);
  CxVector x = CxVector::Zero(N);
  const double inv_sqrt2 = 0.7071067811865475244;
  for (Index idx : support) {
    switch (model) {
      case SignalModel::CircularGaussian:
        x[idx] = Complex(rng.next_gaussian() * inv_sqrt2,
                         rng.next_gaussian() * inv_sqrt2);
        break;
      case SignalModel::UnitModulus: {
        double a = 2.0 * M_PI * rng.next_double();
        x[idx] = Complex(std::cos(a), std::sin(a));
        break;
      }
      case SignalModel::EqualRealImag: {
        double g = rng.next_gaussian();
        x[idx] = Complex(g, g);
        break;
      }
    }
  }
  return x;
}

SparseInstance make_instance(const EnsembleSpec& spec, Index N, double delta,
                             double rho, std::uint64_t seed) {
  if (N < 1) throw InputError("make_instance: N must be positive");
  if (!(delta > 0.0 && delta <= 1.0)) throw InputError("make_instance: delta not in (0, 1]");
  if (!(rho > 0.0 && rho <= 1.0)) throw InputError("make_instance: rho not in (0, 1]");

  SparseInstance inst;
  inst.N = N;
  inst.n = ceil_ratio(delta, N);
  inst.k = ceil_ratio(rho, inst.n);
  inst.delta = delta;
  inst.rho = rho;
  inst.seed = seed;
  if (inst.k < 1 || inst.k > inst.n || inst.n > N)
    throw InputError("make_instance: (delta, rho) yields an infeasible (n, k)");

  inst.x_true = draw_signal(spec.signal_model, N, inst.k, mix64(seed ^ kSignalTag));

  if (spec.kind == EnsembleKind::PartialFourier) {
    SplitMix64 rng(mix64(seed ^ kMatrixTag));
    inst.op = SensingOperator::subsampled_dft(
        N, sample_without_replacement(N, inst.n, rng));
  } else {
    const int max_attempts = 8;
    for (int attempt = 0;; ++attempt) {
      CxMatrix raw = draw_dense(spec.kind, inst.n, N,
                                mix64(seed ^ (kMatrixTag + attempt)));
      CxVector b_raw = raw * inst.x_true;
      try {
        inst.op = orthonormalize(raw, b_raw).first;
        break;
      } catch (const DegenerateEnsembleError&) {
        std::clog << "phaselab: rank-deficient " << to_string(spec.kind)
                  << " draw (seed " << seed << ", attempt " << attempt
                  << "), redrawing\n";
        if (attempt + 1 == max_attempts) throw;
      }
    }
  }
  inst.b = inst.op.apply(inst.x_true);
  return inst;
}

}  // namespace phaselab
