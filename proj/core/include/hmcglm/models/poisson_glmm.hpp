#ifndef HMCGLM_MODELS_POISSON_GLMM_HPP
#define HMCGLM_MODELS_POISSON_GLMM_HPP

#include <memory>

#include "hmcglm/target.hpp"

namespace hmcglm {

/// Poisson regression with one random intercept per group, non-centered:
/// u = e^xi tau with tau ~ N(0, I), lambda = e^xi carrying a half-t(nu_xi, A_xi)
/// prior (including the log-transform Jacobian term +xi), beta ~ N(0, sig2beta I).
/// Parameter layout: theta = (beta_0..beta_q, tau_1..tau_n, xi), k = q + n + 2.
struct PoissonGlmmData {
  VectorXd y;   // counts, stacked by group
  MatrixXd X;   // nd x (q+1) fixed-effects design
  MatrixXd Z;   // nd x n random-intercept indicators
  int n_groups = 0;
  double sig2beta = 1e3;
  double nu_xi = 1.0;
  double A_xi = 25.0;

  Eigen::Index dim() const { return X.cols() + n_groups + 1; }
  void validate() const;
};

/// Returns -inf (a rejected proposal) when any linear predictor exceeds 700.
double glmm_log_posterior(const VectorXd& theta, const PoissonGlmmData& data);
VectorXd glmm_grad(const VectorXd& theta, const PoissonGlmmData& data);

TargetDensity make_glmm_target(std::shared_ptr<const PoissonGlmmData> data);

/// Back-transform posterior draws of (tau, xi) to the random-effect scale:
/// row t of the result is (e^{xi_t} tau_t, e^{xi_t}); the last column is lambda.
MatrixXd u_from_tau_xi(const MatrixXd& tau_samples, const VectorXd& xi_samples);

}  // namespace hmcglm

#endif  // HMCGLM_MODELS_POISSON_GLMM_HPP
