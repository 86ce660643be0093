#include "hmcglm/qr.hpp"

#include <cmath>

#include "hmcglm/errors.hpp"

namespace hmcglm {

QrResult qr_reparameterize(const Eigen::MatrixXd& X) {
  if (X.rows() < X.cols()) throw NumericsError("QR requires at least as many rows as columns");
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
  QrResult out;
  out.Q = qr.householderQ() * Eigen::MatrixXd::Identity(X.rows(), X.cols());
  out.R = qr.matrixQR().topRows(X.cols()).triangularView<Eigen::Upper>();

  const double tol = 1e-10 * X.norm();
  for (Eigen::Index i = 0; i < out.R.rows(); ++i) {
    if (std::abs(out.R(i, i)) < tol)
      throw NumericsError("rank-deficient design: |R(" + std::to_string(i) + "," +
                          std::to_string(i) + ")| below tolerance");
    if (out.R(i, i) < 0) {  // fix signs so the diagonal is positive
      out.R.row(i) = -out.R.row(i);
      out.Q.col(i) = -out.Q.col(i);
    }
  }
  return out;
}

Eigen::MatrixXd qr_back_transform(const Eigen::MatrixXd& samples_eta, const Eigen::MatrixXd& R) {
  if (samples_eta.cols() != R.cols())
    throw DimensionError("eta sample width differs from R dimension");
  for (Eigen::Index i = 0; i < R.rows(); ++i)
    if (R(i, i) == 0.0) throw NumericsError("singular R in back-transform");
  // Solve R beta = eta for every row at once.
  return R.triangularView<Eigen::Upper>().solve(samples_eta.transpose()).transpose();
}

}  // namespace hmcglm
