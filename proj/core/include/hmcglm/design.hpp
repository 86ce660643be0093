#ifndef HMCGLM_DESIGN_HPP
#define HMCGLM_DESIGN_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hmcglm/formula.hpp"
#include "hmcglm/table.hpp"

namespace hmcglm {

struct DesignMatrix {
  Eigen::MatrixXd X;
  std::vector<std::string> names;
};

/// Fixed-effects design: intercept column of ones first, numeric columns pass
/// through, a factor with m levels contributes m-1 treatment-coded indicators
/// (first level is the reference), interaction columns are elementwise
/// products of the expanded constituents. Names follow `var` / `varLEVEL` /
/// `a:b`.
DesignMatrix build_design(const DataTable& table, const FormulaAst& formula);

struct RandomIntercept {
  Eigen::MatrixXd Z;  // nd x n, one 1 per row
  std::vector<std::string> group_levels;
};

/// Indicator matrix of group membership; groups ordered by the factor's level list.
RandomIntercept build_random_intercept(const DataTable& table, const std::string& group_col);

}  // namespace hmcglm

#endif  // HMCGLM_DESIGN_HPP
