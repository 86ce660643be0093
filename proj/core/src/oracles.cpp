#include "hmcglm/oracles.hpp"

#include <cmath>

#include "hmcglm/errors.hpp"
#include "hmcglm/qr.hpp"

namespace hmcglm {

Eigen::VectorXd finite_diff_grad(const std::function<double(const Eigen::VectorXd&)>& f,
                                 const Eigen::VectorXd& theta, double h_scale) {
  Eigen::VectorXd grad(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    const double h = h_scale * std::max(1.0, std::abs(theta[i]));
    Eigen::VectorXd up = theta, down = theta;
    up[i] += h;
    down[i] -= h;
    const double fu = f(up), fd = f(down);
    if (!std::isfinite(fu) || !std::isfinite(fd))
      throw NumericsError("finite_diff_grad: non-finite value probing coordinate " + std::to_string(i));
    grad[i] = (fu - fd) / (2 * h);
  }
  return grad;
}

FitResult ols_fit(const Eigen::VectorXd& y, const Eigen::MatrixXd& X) {
  if (X.rows() != y.size()) throw DimensionError("ols_fit: X row count differs from length of y");
  const QrResult qr = qr_reparameterize(X);  // throws on rank deficiency
  FitResult fit;
  fit.coefficients = qr.R.triangularView<Eigen::Upper>().solve(qr.Q.transpose() * y);
  const double rss = (y - X * fit.coefficients).squaredNorm();
  const auto dof = static_cast<double>(X.rows() - X.cols());
  if (dof > 0) fit.aux = 2.0 * std::log(std::sqrt(rss / dof));
  return fit;
}

FitResult irls_logistic(const Eigen::VectorXd& y, const Eigen::MatrixXd& X) {
  if (X.rows() != y.size()) throw DimensionError("irls_logistic: X row count differs from length of y");
  const Eigen::Index p = X.cols();
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);

  bool converged = false;
  for (int iter = 0; iter < 50; ++iter) {
    const Eigen::VectorXd v = X * beta;
    Eigen::VectorXd mu(v.size()), w(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      mu[i] = 1.0 / (1.0 + std::exp(-v[i]));
      w[i] = mu[i] * (1.0 - mu[i]);
    }
    const Eigen::MatrixXd H = X.transpose() * w.asDiagonal() * X;
    const Eigen::VectorXd score = X.transpose() * (y - mu);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
    if (ldlt.info() != Eigen::Success)
      throw NumericsError("irls_logistic: singular weighted normal matrix");
    const Eigen::VectorXd step = ldlt.solve(score);
    beta += step;
    if (!beta.allFinite() || beta.norm() > 1e4)
      throw NumericsError("irls_logistic: diverging coefficients (perfect separation?)");
    if (step.cwiseAbs().maxCoeff() < 1e-10) {
      converged = true;
      break;
    }
  }
  // Separated data keeps marching outward instead of settling.
  if (!converged)
    throw NumericsError("irls_logistic: no convergence in 50 iterations (perfect separation?)");

  FitResult fit;
  fit.coefficients = beta;
  return fit;
}

}  // namespace hmcglm
