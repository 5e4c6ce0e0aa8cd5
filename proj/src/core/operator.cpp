// SPDX-License-Identifier: Apache-2.0
#include "phaselab/core/operator.hpp"

#include <algorithm>
#include <cmath>

#include "lapack_qr.hpp"
#include "phaselab/core/fft.hpp"
#include "phaselab/errors.hpp"

namespace phaselab {

namespace {
constexpr double kCompletionGate = 1e-8;
}

SensingOperator SensingOperator::dense(CxMatrix a) {
  if (a.rows() < 1 || a.cols() < a.rows())
    throw InputError("SensingOperator::dense: need 1 <= n <= N");
  if (!a.allFinite()) throw InputError("SensingOperator::dense: non-finite entries");
  SensingOperator op;
  op.kind_ = Kind::Dense;
  op.n_ = a.rows();
  op.N_ = a.cols();
  op.a_ = std::make_shared<const CxMatrix>(std::move(a));
  return op;
}

SensingOperator SensingOperator::subsampled_dft(Index n_cols, std::vector<Index> rows) {
  if (n_cols < 1 || rows.empty() || static_cast<Index>(rows.size()) > n_cols)
    throw InputError("SensingOperator::subsampled_dft: need 1 <= n <= N");
  std::vector<Index> sorted = rows;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() < 0 || sorted.back() >= n_cols ||
      std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InputError("SensingOperator::subsampled_dft: rows must be distinct in [0, N)");
  SensingOperator op;
  op.kind_ = Kind::SubsampledDft;
  op.n_ = static_cast<Index>(rows.size());
  op.N_ = n_cols;
  op.rows_ = std::make_shared<const std::vector<Index>>(std::move(rows));
  return op;
}

CxVector SensingOperator::apply(const CxVector& x) const {
  if (n_ == 0) throw ContractError("apply: empty operator");
  if (x.size() != N_) throw InputError("apply: x has wrong length");
  if (kind_ == Kind::Dense) return (*a_) * x;
  CxVector full;
  dft::forward(x, full);
  CxVector out(n_);
  for (Index i = 0; i < n_; ++i) out[i] = full[(*rows_)[i]];
  return out;
}

CxVector SensingOperator::apply_adjoint(const CxVector& v) const {
  if (n_ == 0) throw ContractError("apply_adjoint: empty operator");
  if (v.size() != n_) throw InputError("apply_adjoint: v has wrong length");
  if (kind_ == Kind::Dense) return a_->adjoint() * v;
  CxVector full = CxVector::Zero(N_);
  for (Index i = 0; i < n_; ++i) full[(*rows_)[i]] = v[i];
  CxVector out;
  dft::adjoint(full, out);
  return out;
}

bool SensingOperator::has_completion() const {
  return kind_ == Kind::Dense ? static_cast<bool>(phi_) : static_cast<bool>(perm_);
}

CxVector SensingOperator::apply_completion(const CxVector& x) const {
  if (!has_completion()) throw ContractError("operator has no completion");
  if (x.size() != N_) throw InputError("apply_completion: x has wrong length");
  if (kind_ == Kind::Dense) return (*phi_) * x;
  CxVector full;
  dft::forward(x, full);
  CxVector out(N_);
  for (Index j = 0; j < N_; ++j) out[j] = full[(*perm_)[j]];
  return out;
}

CxVector SensingOperator::apply_completion_adjoint(const CxVector& d) const {
  if (!has_completion()) throw ContractError("operator has no completion");
  if (d.size() != N_) throw InputError("apply_completion_adjoint: d has wrong length");
  if (kind_ == Kind::Dense) return phi_->adjoint() * d;
  CxVector full(N_);
  for (Index j = 0; j < N_; ++j) full[(*perm_)[j]] = d[j];
  CxVector out;
  dft::adjoint(full, out);
  return out;
}

CxMatrix SensingOperator::dense_matrix() const {
  if (kind_ == Kind::Dense) return *a_;
  CxMatrix a(n_, N_);
  for (Index i = 0; i < n_; ++i)
    for (Index k = 0; k < N_; ++k) a(i, k) = dft::matrix_entry(N_, (*rows_)[i], k);
  return a;
}

CxMatrix SensingOperator::completion_matrix() const {
  if (!has_completion()) throw ContractError("operator has no completion");
  if (kind_ == Kind::Dense) return *phi_;
  CxMatrix phi(N_, N_);
  for (Index j = 0; j < N_; ++j)
    for (Index k = 0; k < N_; ++k) phi(j, k) = dft::matrix_entry(N_, (*perm_)[j], k);
  return phi;
}

double SensingOperator::orthonormality_defect() const {
  CxMatrix a = dense_matrix();
  CxMatrix gram = a * a.adjoint();
  gram.diagonal().array() -= 1.0;
  return gram.cwiseAbs().maxCoeff();
}

const std::vector<Index>& SensingOperator::selected_rows() const {
  if (kind_ != Kind::SubsampledDft)
    throw ContractError("selected_rows: dense operator has no row set");
  return *rows_;
}

SensingOperator complete_to_unitary(const SensingOperator& op) {
  SensingOperator out = op;
  if (op.kind() == SensingOperator::Kind::SubsampledDft) {
    // Selected rows first, remaining DFT rows in ascending order.
    std::vector<char> taken(op.cols(), 0);
    for (Index r : *op.rows_) taken[r] = 1;
    auto perm = std::make_shared<std::vector<Index>>();
    perm->reserve(op.cols());
    perm->insert(perm->end(), op.rows_->begin(), op.rows_->end());
    for (Index r = 0; r < op.cols(); ++r)
      if (!taken[r]) perm->push_back(r);
    out.perm_ = std::move(perm);
    return out;
  }

  if (op.orthonormality_defect() > kCompletionGate)
    throw ContractError("complete_to_unitary: operator is not partially orthonormal");

  const Index n = op.rows(), N = op.cols();
  detail::FullQr f = detail::full_qr(op.a_->adjoint());
  CxMatrix phi = f.q.adjoint();
  // A = R^H Q_thin^H with R unitary upper triangular, hence diagonal; absorb
  // the diagonal phases so the first n rows reproduce A exactly.
  for (Index i = 0; i < n; ++i) {
    Complex d = f.r_diag[i];
    double mag = std::abs(d);
    if (mag == 0.0) throw ContractError("complete_to_unitary: rank-deficient input");
    phi.row(i) *= std::conj(d) / mag;
  }
  double mismatch = (phi.topRows(n) - *op.a_).cwiseAbs().maxCoeff();
  if (mismatch > kCompletionGate)
    throw ContractError("complete_to_unitary: completion does not reproduce A");
  out.phi_ = std::make_shared<const CxMatrix>(std::move(phi));
  return out;
}

}  // namespace phaselab
