#ifndef HMCGLM_TABLE_HPP
#define HMCGLM_TABLE_HPP

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hmcglm {

enum class ColumnType { Numeric, Factor };

/// Declared schema for a dataset fixture: column order, types, and pinned
/// factor level order. Columns it does not declare default to factor levels
/// in order of first appearance.
struct DatasetConfig {
  struct ColumnSpec {
    std::string name;
    ColumnType type = ColumnType::Numeric;
    std::vector<std::string> levels;  // optional; factor columns only
  };
  std::vector<ColumnSpec> columns;

  static DatasetConfig from_json_file(const std::string& path);
  const ColumnSpec* find(const std::string& name) const;
};

/// A typed column: numeric values, or integer level codes plus the level list.
struct Column {
  std::string name;
  ColumnType type = ColumnType::Numeric;
  Eigen::VectorXd numeric;      // Numeric columns
  std::vector<int> codes;       // Factor columns: index into levels
  std::vector<std::string> levels;

  Eigen::Index size() const {
    return type == ColumnType::Numeric ? numeric.size() : static_cast<Eigen::Index>(codes.size());
  }
};

/// Immutable column-typed table loaded from a CSV fixture.
class DataTable {
 public:
  /// Parse a UTF-8 comma-separated file with a header row; "." decimals.
  /// Column typing follows `config` when given, otherwise every column whose
  /// every entry parses as a number is numeric and the rest are factors.
  static DataTable from_csv(const std::string& path, const DatasetConfig* config = nullptr);

  Eigen::Index n_rows() const { return n_rows_; }
  const std::vector<Column>& columns() const { return columns_; }
  const Column& column(const std::string& name) const;
  bool has_column(const std::string& name) const;

  /// Numeric view of a column: numeric values, or factor codes as doubles.
  Eigen::VectorXd numeric_values(const std::string& name) const;

 private:
  std::vector<Column> columns_;
  Eigen::Index n_rows_ = 0;
};

}  // namespace hmcglm

#endif  // HMCGLM_TABLE_HPP
