#include "hmcglm/design.hpp"

#include "hmcglm/errors.hpp"

namespace hmcglm {

namespace {

struct Expanded {
  std::vector<Eigen::VectorXd> cols;
  std::vector<std::string> names;
};

Expanded expand_variable(const DataTable& table, const std::string& var) {
  if (!table.has_column(var)) throw DataError("formula variable '" + var + "' not in table");
  const Column& col = table.column(var);
  Expanded out;
  if (col.type == ColumnType::Numeric) {
    out.cols.push_back(col.numeric);
    out.names.push_back(var);
    return out;
  }
  if (col.levels.size() < 2)
    throw DataError("factor '" + var + "' has fewer than 2 levels");
  const auto n = static_cast<Eigen::Index>(col.codes.size());
  for (std::size_t lv = 1; lv < col.levels.size(); ++lv) {
    Eigen::VectorXd ind(n);
    for (Eigen::Index r = 0; r < n; ++r) ind[r] = col.codes[r] == static_cast<int>(lv) ? 1.0 : 0.0;
    out.cols.push_back(std::move(ind));
    out.names.push_back(var + col.levels[lv]);
  }
  return out;
}

}  // namespace

DesignMatrix build_design(const DataTable& table, const FormulaAst& formula) {
  const Eigen::Index n = table.n_rows();
  std::vector<Eigen::VectorXd> cols{Eigen::VectorXd::Ones(n)};
  std::vector<std::string> names{"(Intercept)"};

  for (const auto& term : formula.terms) {
    if (term.size() == 1) {
      Expanded e = expand_variable(table, term[0]);
      for (std::size_t i = 0; i < e.cols.size(); ++i) {
        cols.push_back(std::move(e.cols[i]));
        names.push_back(std::move(e.names[i]));
      }
    } else {
      Expanded a = expand_variable(table, term[0]);
      Expanded b = expand_variable(table, term[1]);
      for (std::size_t i = 0; i < a.cols.size(); ++i)
        for (std::size_t j = 0; j < b.cols.size(); ++j) {
          cols.push_back(a.cols[i].cwiseProduct(b.cols[j]));
          names.push_back(a.names[i] + ":" + b.names[j]);
        }
    }
  }

  DesignMatrix dm;
  dm.X.resize(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) dm.X.col(static_cast<Eigen::Index>(c)) = cols[c];
  dm.names = std::move(names);
  return dm;
}

RandomIntercept build_random_intercept(const DataTable& table, const std::string& group_col) {
  if (!table.has_column(group_col)) throw DataError("unknown grouping column: " + group_col);
  const Column& col = table.column(group_col);
  if (col.type != ColumnType::Factor)
    throw DataError("grouping column '" + group_col + "' is not a factor");

  const auto n = static_cast<Eigen::Index>(col.codes.size());
  RandomIntercept ri;
  ri.group_levels = col.levels;
  ri.Z = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(col.levels.size()));
  for (Eigen::Index r = 0; r < n; ++r) ri.Z(r, col.codes[r]) = 1.0;
  return ri;
}

}  // namespace hmcglm
