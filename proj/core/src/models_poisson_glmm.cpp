#include "hmcglm/models/poisson_glmm.hpp"

#include <cmath>
#include <limits>

#include "hmcglm/errors.hpp"

namespace hmcglm {

void PoissonGlmmData::validate() const {
  if (X.rows() != y.size() || Z.rows() != y.size())
    throw DimensionError("X/Z row counts differ from length of y");
  if (Z.cols() != n_groups) throw DimensionError("Z column count differs from n_groups");
  for (Eigen::Index r = 0; r < Z.rows(); ++r) {
    int ones = 0;
    for (Eigen::Index c = 0; c < Z.cols(); ++c) {
      if (Z(r, c) == 1.0)
        ++ones;
      else if (Z(r, c) != 0.0)
        throw DimensionError("Z is not a 0/1 indicator matrix");
    }
    if (ones != 1) throw DimensionError("Z row " + std::to_string(r) + " does not have exactly one 1");
  }
  if (!(sig2beta > 0) || !(nu_xi > 0) || !(A_xi > 0))
    throw DimensionError("glmm hyperparameters must be positive");
}

double glmm_log_posterior(const VectorXd& theta, const PoissonGlmmData& data) {
  if (theta.size() != data.dim()) throw DimensionError("glmm: theta length mismatch");
  const Eigen::Index p = data.X.cols();
  const Eigen::Index n = data.n_groups;
  const auto beta = theta.head(p);
  const auto tau = theta.segment(p, n);
  const double xi = theta[p + n];

  const VectorXd eta = data.X * beta + std::exp(xi) * (data.Z * tau);
  if (eta.maxCoeff() > 700.0) return -std::numeric_limits<double>::infinity();

  const double loglik = -eta.array().exp().sum() + data.y.dot(eta);
  const double log_beta_prior = -beta.squaredNorm() / (2 * data.sig2beta);
  const double log_tau_prior = -tau.squaredNorm() / 2;
  const double log_xi_prior =
      -(data.nu_xi + 1) / 2 * std::log1p(std::exp(2 * xi) / (data.nu_xi * data.A_xi * data.A_xi)) + xi;
  return loglik + log_beta_prior + log_tau_prior + log_xi_prior;
}

VectorXd glmm_grad(const VectorXd& theta, const PoissonGlmmData& data) {
  if (theta.size() != data.dim()) throw DimensionError("glmm: theta length mismatch");
  const Eigen::Index p = data.X.cols();
  const Eigen::Index n = data.n_groups;
  const auto beta = theta.head(p);
  const auto tau = theta.segment(p, n);
  const double xi = theta[p + n];
  const double ex = std::exp(xi);

  const VectorXd eta = data.X * beta + ex * (data.Z * tau);
  if (eta.maxCoeff() > 700.0)
    return VectorXd::Constant(theta.size(), std::numeric_limits<double>::quiet_NaN());

  const VectorXd w = data.y - eta.array().exp().matrix();
  VectorXd grad(theta.size());
  grad.head(p) = data.X.transpose() * w - beta / data.sig2beta;
  const VectorXd ztw = data.Z.transpose() * w;
  grad.segment(p, n) = ex * ztw - tau;
  grad[p + n] = ex * tau.dot(ztw) -
                (data.nu_xi + 1) / (1 + data.nu_xi * data.A_xi * data.A_xi * std::exp(-2 * xi)) + 1;
  return grad;
}

TargetDensity make_glmm_target(std::shared_ptr<const PoissonGlmmData> data) {
  data->validate();
  TargetDensity t;
  t.dim = data->dim();
  t.log_density = [data](const VectorXd& theta) { return glmm_log_posterior(theta, *data); };
  t.grad_log_density = [data](const VectorXd& theta) { return glmm_grad(theta, *data); };
  return t;
}

MatrixXd u_from_tau_xi(const MatrixXd& tau_samples, const VectorXd& xi_samples) {
  if (tau_samples.rows() != xi_samples.size())
    throw DimensionError("tau/xi sample row counts differ");
  MatrixXd out(tau_samples.rows(), tau_samples.cols() + 1);
  for (Eigen::Index t = 0; t < tau_samples.rows(); ++t) {
    const double lambda = std::exp(xi_samples[t]);
    out.row(t).head(tau_samples.cols()) = lambda * tau_samples.row(t);
    out(t, tau_samples.cols()) = lambda;
  }
  return out;
}

}  // namespace hmcglm
