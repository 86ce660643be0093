#ifndef HMCGLM_MODELS_LINEAR_HPP
#define HMCGLM_MODELS_LINEAR_HPP

#include <memory>

#include "hmcglm/target.hpp"

namespace hmcglm {

/// Gaussian linear regression with conjugate-style priors: beta ~ N(0, sig2beta I),
/// sigma_eps^2 ~ InverseGamma(a, b), sampled on gamma = log sigma_eps^2.
/// Parameter layout: theta = (beta_0..beta_q, gamma), k = q + 2.
struct LinearModelData {
  VectorXd y;
  MatrixXd X;
  double a = 1e-4;
  double b = 1e-4;
  double sig2beta = 1e3;

  Eigen::Index dim() const { return X.cols() + 1; }
  void validate() const;
};

double linear_log_posterior(const VectorXd& theta, const LinearModelData& data);
VectorXd linear_grad(const VectorXd& theta, const LinearModelData& data);

TargetDensity make_linear_target(std::shared_ptr<const LinearModelData> data);

/// Same posterior reparameterized on eta = R beta with design Q (thin QR of X):
/// the likelihood uses Q eta and the beta prior is evaluated on beta = R^{-1} eta,
/// so back-transformed draws follow exactly the original posterior.
TargetDensity make_linear_qr_target(std::shared_ptr<const LinearModelData> qdata, const MatrixXd& R);

}  // namespace hmcglm

#endif  // HMCGLM_MODELS_LINEAR_HPP
