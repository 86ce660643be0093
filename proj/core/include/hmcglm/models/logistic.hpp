#ifndef HMCGLM_MODELS_LOGISTIC_HPP
#define HMCGLM_MODELS_LOGISTIC_HPP

#include <memory>

#include "hmcglm/target.hpp"

namespace hmcglm {

/// Bernoulli regression with logit link and beta ~ N(0, sig2beta I).
/// Parameter layout: theta = beta, k = q + 1.
struct LogisticModelData {
  VectorXd y;  // entries in {0, 1}
  MatrixXd X;
  double sig2beta = 1e3;

  Eigen::Index dim() const { return X.cols(); }
  void validate() const;
};

double logistic_log_posterior(const VectorXd& theta, const LogisticModelData& data);
VectorXd logistic_grad(const VectorXd& theta, const LogisticModelData& data);

TargetDensity make_logistic_target(std::shared_ptr<const LogisticModelData> data);

/// log(1 + e^{-v}) evaluated as max(0, -v) + log1p(e^{-|v|}) so large |v| cannot overflow.
double log1p_exp_neg(double v);

}  // namespace hmcglm

#endif  // HMCGLM_MODELS_LOGISTIC_HPP
