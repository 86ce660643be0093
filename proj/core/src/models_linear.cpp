#include "hmcglm/models/linear.hpp"

#include <cmath>

#include "hmcglm/errors.hpp"

namespace hmcglm {

void LinearModelData::validate() const {
  if (X.rows() != y.size()) throw DimensionError("X row count differs from length of y");
  if (!(a > 0) || !(b > 0) || !(sig2beta > 0))
    throw DimensionError("linear model hyperparameters must be positive");
}

double linear_log_posterior(const VectorXd& theta, const LinearModelData& data) {
  if (theta.size() != data.dim()) throw DimensionError("linear model: theta length mismatch");
  const Eigen::Index p = data.X.cols();
  const auto beta = theta.head(p);
  const double gamma = theta[p];
  const double n = static_cast<double>(data.y.size());

  const VectorXd resid = data.y - data.X * beta;
  const double rss = resid.squaredNorm();
  return -(n / 2 + data.a) * gamma - std::exp(-gamma) / 2 * rss -
         beta.squaredNorm() / (2 * data.sig2beta) - data.b * std::exp(-gamma);
}

VectorXd linear_grad(const VectorXd& theta, const LinearModelData& data) {
  if (theta.size() != data.dim()) throw DimensionError("linear model: theta length mismatch");
  const Eigen::Index p = data.X.cols();
  const auto beta = theta.head(p);
  const double gamma = theta[p];
  const double n = static_cast<double>(data.y.size());

  const VectorXd resid = data.y - data.X * beta;
  VectorXd grad(theta.size());
  grad.head(p) = std::exp(-gamma) * (data.X.transpose() * resid) - beta / data.sig2beta;
  grad[p] = -(n / 2 + data.a) + std::exp(-gamma) / 2 * resid.squaredNorm() + data.b * std::exp(-gamma);
  return grad;
}

TargetDensity make_linear_target(std::shared_ptr<const LinearModelData> data) {
  data->validate();
  TargetDensity t;
  t.dim = data->dim();
  t.log_density = [data](const VectorXd& theta) { return linear_log_posterior(theta, *data); };
  t.grad_log_density = [data](const VectorXd& theta) { return linear_grad(theta, *data); };
  return t;
}

TargetDensity make_linear_qr_target(std::shared_ptr<const LinearModelData> qdata, const MatrixXd& R) {
  qdata->validate();
  if (R.rows() != qdata->X.cols() || R.cols() != qdata->X.cols())
    throw DimensionError("R dimensions differ from design column count");
  auto Rmat = std::make_shared<const MatrixXd>(R);

  TargetDensity t;
  t.dim = qdata->dim();
  t.log_density = [qdata, Rmat](const VectorXd& theta) {
    const Eigen::Index p = qdata->X.cols();
    const auto eta = theta.head(p);
    const double gamma = theta[p];
    const double n = static_cast<double>(qdata->y.size());
    const VectorXd beta = Rmat->triangularView<Eigen::Upper>().solve(eta);
    const VectorXd resid = qdata->y - qdata->X * eta;
    return -(n / 2 + qdata->a) * gamma - std::exp(-gamma) / 2 * resid.squaredNorm() -
           beta.squaredNorm() / (2 * qdata->sig2beta) - qdata->b * std::exp(-gamma);
  };
  t.grad_log_density = [qdata, Rmat](const VectorXd& theta) {
    const Eigen::Index p = qdata->X.cols();
    const auto eta = theta.head(p);
    const double gamma = theta[p];
    const double n = static_cast<double>(qdata->y.size());
    const VectorXd beta = Rmat->triangularView<Eigen::Upper>().solve(eta);
    const VectorXd resid = qdata->y - qdata->X * eta;
    // d/d eta of -beta'beta/(2 s2b) with beta = R^{-1} eta is -R^{-T} beta / s2b.
    const VectorXd prior_grad = Rmat->transpose().triangularView<Eigen::Lower>().solve(beta) / qdata->sig2beta;
    VectorXd grad(theta.size());
    grad.head(p) = std::exp(-gamma) * (qdata->X.transpose() * resid) - prior_grad;
    grad[p] = -(n / 2 + qdata->a) + std::exp(-gamma) / 2 * resid.squaredNorm() + qdata->b * std::exp(-gamma);
    return grad;
  };
  return t;
}

}  // namespace hmcglm
