#ifndef HMCGLM_ERRORS_HPP
#define HMCGLM_ERRORS_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace hmcglm {

/// Contract violation: mismatched dimensions, invalid argument values.
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Invalid run specification (bad config field, non-finite initial log density, ...).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input data (CSV parse failure, unknown column, bad factor value, ...).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A leapfrog trajectory hit a non-finite gradient or position.
/// Carries the offending position so callers can report or reject.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& msg, Eigen::VectorXd theta)
      : std::runtime_error(msg), theta_(std::move(theta)) {}
  const Eigen::VectorXd& theta() const { return theta_; }

 private:
  Eigen::VectorXd theta_;
};

/// Irrecoverable sampling failure (distinct from per-proposal divergences,
/// which are rejected and counted).
class SamplingError : public std::runtime_error {
 public:
  explicit SamplingError(const std::string& msg, int chain_id = -1)
      : std::runtime_error(msg), chain_id_(chain_id) {}
  int chain_id() const { return chain_id_; }

 private:
  int chain_id_;
};

/// Numerical failure in an oracle (rank deficiency, separation, non-finite probe).
class NumericsError : public std::runtime_error {
 public:
  explicit NumericsError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hmcglm

#endif  // HMCGLM_ERRORS_HPP
