#ifndef HMCGLM_ORACLES_HPP
#define HMCGLM_ORACLES_HPP

#include <functional>
#include <optional>

#include <Eigen/Dense>

namespace hmcglm {

/// Central finite differences with relative stepping: coordinate i uses
/// h_i = h_scale * max(1, |theta_i|). Throws NumericsError naming the
/// coordinate if the function is non-finite at a probe point.
Eigen::VectorXd finite_diff_grad(const std::function<double(const Eigen::VectorXd&)>& f,
                                 const Eigen::VectorXd& theta, double h_scale = 1e-6);

struct FitResult {
  Eigen::VectorXd coefficients;
  std::optional<double> aux;  // linear model: 2 log sigma-hat
};

/// Least squares through the thin QR (R beta = Q'y); aux is 2 log sigma-hat
/// with sigma-hat^2 = RSS / (n - p).
FitResult ols_fit(const Eigen::VectorXd& y, const Eigen::MatrixXd& X);

/// Logistic MLE by Newton-Raphson, iterating until the largest coefficient
/// change is below 1e-10 or 50 iterations. ||beta|| > 1e4 is reported as
/// separation.
FitResult irls_logistic(const Eigen::VectorXd& y, const Eigen::MatrixXd& X);

}  // namespace hmcglm

#endif  // HMCGLM_ORACLES_HPP
