#include "hmcglm/models/logistic.hpp"

#include <cmath>

#include "hmcglm/errors.hpp"

namespace hmcglm {

void LogisticModelData::validate() const {
  if (X.rows() != y.size()) throw DimensionError("X row count differs from length of y");
  for (Eigen::Index i = 0; i < y.size(); ++i)
    if (y[i] != 0.0 && y[i] != 1.0)
      throw DimensionError("logistic response entry " + std::to_string(i) + " is not 0/1");
  if (!(sig2beta > 0)) throw DimensionError("sig2beta must be positive");
}

double log1p_exp_neg(double v) {
  return std::max(0.0, -v) + std::log1p(std::exp(-std::abs(v)));
}

double logistic_log_posterior(const VectorXd& theta, const LogisticModelData& data) {
  if (theta.size() != data.dim()) throw DimensionError("logistic model: theta length mismatch");
  const VectorXd v = data.X * theta;
  double loglik = theta.dot(data.X.transpose() * (data.y.array() - 1.0).matrix());
  for (Eigen::Index i = 0; i < v.size(); ++i) loglik -= log1p_exp_neg(v[i]);
  return loglik - theta.squaredNorm() / (2 * data.sig2beta);
}

VectorXd logistic_grad(const VectorXd& theta, const LogisticModelData& data) {
  if (theta.size() != data.dim()) throw DimensionError("logistic model: theta length mismatch");
  const VectorXd v = data.X * theta;
  VectorXd w(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    // e^{-v} / (1 + e^{-v}) without overflow for either sign of v
    w[i] = (v[i] >= 0) ? std::exp(-v[i]) / (1 + std::exp(-v[i])) : 1 / (1 + std::exp(v[i]));
  }
  return data.X.transpose() * (data.y + w - VectorXd::Ones(v.size())) - theta / data.sig2beta;
}

TargetDensity make_logistic_target(std::shared_ptr<const LogisticModelData> data) {
  data->validate();
  TargetDensity t;
  t.dim = data->dim();
  t.log_density = [data](const VectorXd& theta) { return logistic_log_posterior(theta, *data); };
  t.grad_log_density = [data](const VectorXd& theta) { return logistic_grad(theta, *data); };
  return t;
}

}  // namespace hmcglm
