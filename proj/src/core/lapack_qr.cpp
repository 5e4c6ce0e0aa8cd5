// SPDX-License-Identifier: Apache-2.0
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>

#include "lapack_qr.hpp"

#include <lapacke.h>

#include "phaselab/errors.hpp"

namespace phaselab::detail {

ThinQr thin_qr(CxMatrix m) {
  const lapack_int rows = static_cast<lapack_int>(m.rows());
  const lapack_int cols = static_cast<lapack_int>(m.cols());
  if (rows < cols) throw InputError("thin_qr: matrix must be tall");
  CxVector tau(cols);
  lapack_int info =
      LAPACKE_zgeqrf(LAPACK_COL_MAJOR, rows, cols, m.data(), rows, tau.data());
  if (info != 0) throw NumericalError("zgeqrf failed", info);

  ThinQr out;
  out.r = m.topRows(cols).triangularView<Eigen::Upper>();
  info = LAPACKE_zungqr(LAPACK_COL_MAJOR, rows, cols, cols, m.data(), rows,
                        tau.data());
  if (info != 0) throw NumericalError("zungqr failed", info);
  out.q = std::move(m);
  return out;
}

FullQr full_qr(CxMatrix m) {
  const lapack_int rows = static_cast<lapack_int>(m.rows());
  const lapack_int cols = static_cast<lapack_int>(m.cols());
  if (rows < cols) throw InputError("full_qr: matrix must be tall");
  CxVector tau(cols);
  lapack_int info =
      LAPACKE_zgeqrf(LAPACK_COL_MAJOR, rows, cols, m.data(), rows, tau.data());
  if (info != 0) throw NumericalError("zgeqrf failed", info);

  FullQr out;
  out.r_diag = m.diagonal().head(cols);
  CxMatrix q(rows, rows);
  q.leftCols(cols) = m;
  info = LAPACKE_zungqr(LAPACK_COL_MAJOR, rows, rows, cols, q.data(), rows,
                        tau.data());
  if (info != 0) throw NumericalError("zungqr failed", info);
  out.q = std::move(q);
  return out;
}

}  // namespace phaselab::detail
