#include <doctest.h>

#include <cmath>

#include "hmcglm/errors.hpp"
#include "hmcglm/oracles.hpp"
#include "hmcglm/rng.hpp"

using namespace hmcglm;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_CASE("finite differences on simple analytic functions") {
  auto square = [](const VectorXd& t) { return t[0] * t[0]; };
  VectorXd at = VectorXd::Constant(1, 3.0);
  CHECK(finite_diff_grad(square, at)[0] == doctest::Approx(6.0).epsilon(1e-6));

  auto sine = [](const VectorXd& t) { return std::sin(t[0]); };
  at[0] = 0.0;
  CHECK(finite_diff_grad(sine, at)[0] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("finite differences error is O(h^2)") {
  auto cube = [](const VectorXd& t) { return t[0] * t[0] * t[0]; };
  const VectorXd at = VectorXd::Constant(1, 2.0);
  const double exact = 12.0;
  const double e1 = std::abs(finite_diff_grad(cube, at, 1e-3)[0] - exact);
  const double e2 = std::abs(finite_diff_grad(cube, at, 5e-4)[0] - exact);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("non-finite probe names the coordinate") {
  auto partial = [](const VectorXd& t) {
    return t[1] > 0.5 ? std::numeric_limits<double>::quiet_NaN() : t.squaredNorm();
  };
  VectorXd at(2);
  at << 0.0, 0.5;
  try {
    finite_diff_grad(partial, at);
    FAIL("expected NumericsError");
  } catch (const NumericsError& e) {
    CHECK(std::string(e.what()).find("coordinate 1") != std::string::npos);
  }
}

TEST_CASE("ols: exact interpolation and the two-point line") {
  Rng rng(77);
  MatrixXd X(10, 3);
  for (Eigen::Index i = 0; i < 10; ++i)
    for (Eigen::Index j = 0; j < 3; ++j) X(i, j) = rng.normal();
  VectorXd c(3);
  c << 1.5, -2.0, 0.25;
  const FitResult exact = ols_fit(X * c, X);
  CHECK((exact.coefficients - c).cwiseAbs().maxCoeff() < 1e-10);

  MatrixXd X2(2, 2);
  X2 << 1, 0, 1, 1;
  VectorXd y2(2);
  y2 << 1, 2;
  const FitResult line = ols_fit(y2, X2);
  CHECK(line.coefficients[0] == doctest::Approx(1.0));
  CHECK(line.coefficients[1] == doctest::Approx(1.0));
}

TEST_CASE("ols residuals are orthogonal to the column space") {
  Rng rng(78);
  MatrixXd X(40, 5);
  VectorXd y(40);
  for (Eigen::Index i = 0; i < 40; ++i) {
    for (Eigen::Index j = 0; j < 5; ++j) X(i, j) = rng.normal();
    y[i] = rng.normal() * 3.0;
  }
  const FitResult fit = ols_fit(y, X);
  const VectorXd xtr = X.transpose() * (y - X * fit.coefficients);
  const VectorXd xty = X.transpose() * y;
  CHECK(xtr.cwiseAbs().maxCoeff() < 1e-8 * xty.cwiseAbs().maxCoeff());
}

TEST_CASE("irls: intercept-only closed forms") {
  MatrixXd X = MatrixXd::Ones(6, 1);
  VectorXd y(6);
  y << 1, 1, 1, 0, 0, 0;
  CHECK(irls_logistic(y, X).coefficients[0] == doctest::Approx(0.0).epsilon(1e-10));

  y << 1, 1, 0, 0, 0, 0;
  CHECK(irls_logistic(y, X).coefficients[0] ==
        doctest::Approx(std::log(2.0 / 4.0)).epsilon(1e-10));
}

TEST_CASE("irls: score vanishes at the returned solution") {
  Rng rng(79);
  MatrixXd X(80, 3);
  X.col(0).setOnes();
  for (Eigen::Index i = 0; i < 80; ++i) {
    X(i, 1) = rng.normal();
    X(i, 2) = rng.normal();
  }
  VectorXd y(80);
  for (Eigen::Index i = 0; i < 80; ++i) {
    const double prob = 1.0 / (1.0 + std::exp(-(0.3 + 0.8 * X(i, 1) - 0.5 * X(i, 2))));
    y[i] = rng.uniform() < prob ? 1.0 : 0.0;
  }
  const FitResult fit = irls_logistic(y, X);
  VectorXd mu(80);
  for (Eigen::Index i = 0; i < 80; ++i) mu[i] = 1.0 / (1.0 + std::exp(-X.row(i).dot(fit.coefficients)));
  CHECK((X.transpose() * (y - mu)).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("irls: perfect separation is reported") {
  MatrixXd X(6, 2);
  X << 1, -3, 1, -2, 1, -1, 1, 1, 1, 2, 1, 3;
  VectorXd y(6);
  y << 0, 0, 0, 1, 1, 1;
  CHECK_THROWS_AS(irls_logistic(y, X), NumericsError);
}

TEST_CASE("rank-deficient designs are rejected") {
  MatrixXd X(4, 2);
  X << 1, 2, 1, 2, 1, 2, 1, 2;
  CHECK_THROWS_AS(ols_fit(VectorXd::Ones(4), X), NumericsError);
}
