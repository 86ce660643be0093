#ifndef HMCGLM_TARGET_HPP
#define HMCGLM_TARGET_HPP

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "hmcglm/errors.hpp"

namespace hmcglm {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// An unnormalized log density together with its gradient. Both callables
/// must be pure and safe to invoke from several chains concurrently.
struct TargetDensity {
  std::function<double(const VectorXd&)> log_density;
  std::function<VectorXd(const VectorXd&)> grad_log_density;
  Eigen::Index dim = 0;

  void check_point(const VectorXd& theta) const {
    if (theta.size() != dim)
      throw DimensionError("theta has length " + std::to_string(theta.size()) +
                           ", target dimension is " + std::to_string(dim));
  }
};

/// Position/momentum pair evolved by the leapfrog map.
struct PhaseState {
  VectorXd theta;
  VectorXd momentum;

  void check() const {
    if (theta.size() != momentum.size())
      throw DimensionError("theta and momentum lengths differ");
  }
};

/// Diagonal of the mass matrix M; all entries strictly positive.
struct MassSpec {
  VectorXd diag;

  static MassSpec identity(Eigen::Index k) { return MassSpec{VectorXd::Ones(k)}; }

  void validate() const {
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
      if (!(diag[i] > 0.0) || !std::isfinite(diag[i]))
        throw DimensionError("mass diagonal entry " + std::to_string(i) + " not positive and finite");
    }
  }
};

}  // namespace hmcglm

#endif  // HMCGLM_TARGET_HPP
