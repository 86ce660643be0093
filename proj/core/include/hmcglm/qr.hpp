#ifndef HMCGLM_QR_HPP
#define HMCGLM_QR_HPP

#include <Eigen/Dense>

namespace hmcglm {

struct QrResult {
  Eigen::MatrixXd Q;  // n x p, orthonormal columns
  Eigen::MatrixXd R;  // p x p, upper-triangular, positive diagonal
};

/// Thin QR by Householder reflections with the sign convention R_ii > 0.
/// Throws NumericsError when |R_ii| < 1e-10 * ||X|| (rank deficiency).
QrResult qr_reparameterize(const Eigen::MatrixXd& X);

/// Map draws made against design Q back to the original basis: each row of
/// `samples_eta` solves R beta = eta by back-substitution.
Eigen::MatrixXd qr_back_transform(const Eigen::MatrixXd& samples_eta, const Eigen::MatrixXd& R);

}  // namespace hmcglm

#endif  // HMCGLM_QR_HPP
