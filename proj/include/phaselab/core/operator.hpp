// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <vector>

#include "phaselab/common.hpp"

namespace phaselab {

/// A partially orthonormal complex measurement map A (n x N, A A^H = I),
/// stored either as an explicit dense matrix or as a row subset of the
/// unitary DFT applied through the fast transform. Optionally carries a
/// unitary N x N completion Phi whose first n rows equal A.
///
/// Immutable after construction; safe to share across threads.
class SensingOperator {
 public:
  enum class Kind { Dense, SubsampledDft };

  SensingOperator() = default;  // empty; every use throws until assigned

  static SensingOperator dense(CxMatrix a);
  static SensingOperator subsampled_dft(Index n_cols, std::vector<Index> rows);

  Kind kind() const { return kind_; }
  Index rows() const { return n_; }
  Index cols() const { return N_; }

  /// A x. Input length N, output length n.
  CxVector apply(const CxVector& x) const;

  /// A^H v. Input length n, output length N.
  CxVector apply_adjoint(const CxVector& v) const;

  bool has_completion() const;

  /// Phi x (length N). Requires a completion.
  CxVector apply_completion(const CxVector& x) const;

  /// Phi^H d (length N). Requires a completion.
  CxVector apply_completion_adjoint(const CxVector& d) const;

  /// Materialized n x N matrix (small problems, tests, bridge checks).
  CxMatrix dense_matrix() const;

  /// Materialized N x N completion. Requires a completion.
  CxMatrix completion_matrix() const;

  /// ||A A^H - I||_max computed through the dense representation.
  double orthonormality_defect() const;

  /// Row-index set (SubsampledDft only).
  const std::vector<Index>& selected_rows() const;

 private:
  Kind kind_ = Kind::Dense;
  Index n_ = 0;
  Index N_ = 0;
  std::shared_ptr<const CxMatrix> a_;               // Dense
  std::shared_ptr<const CxMatrix> phi_;             // Dense completion
  std::shared_ptr<const std::vector<Index>> rows_;  // SubsampledDft
  // Completion row order for SubsampledDft: perm[j] = source DFT row of
  // Phi's row j (selected rows first, the rest ascending).
  std::shared_ptr<const std::vector<Index>> perm_;

  friend SensingOperator complete_to_unitary(const SensingOperator& op);
};

/// Returns a copy of op carrying a unitary completion. For SubsampledDft the
/// completion is the full transform with rows permuted so the selected rows
/// come first. For Dense it is built from a full orthonormal factorization
/// of A^H, with the leading rows phase-corrected to reproduce A exactly.
/// Throws ContractError if op is not partially orthonormal within 1e-8.
SensingOperator complete_to_unitary(const SensingOperator& op);

}  // namespace phaselab
