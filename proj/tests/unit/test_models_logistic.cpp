#include <doctest.h>

#include <cmath>
#include <memory>

#include "hmcglm/design.hpp"
#include "hmcglm/formula.hpp"
#include "hmcglm/models/logistic.hpp"
#include "hmcglm/oracles.hpp"
#include "hmcglm/rng.hpp"
#include "hmcglm/table.hpp"
#include "test_helpers.hpp"

using namespace hmcglm;

namespace {

LogisticModelData birthwt_model() {
  const auto cfg = DatasetConfig::from_json_file(test::data_path("birthwt.json"));
  const auto table = DataTable::from_csv(test::data_path("birthwt.csv"), &cfg);
  const auto dm = build_design(
      table, parse_formula("low ~ age + lwt + race2 + smoke + ptd + ht + ui + ftv2"));
  LogisticModelData data;
  data.y = table.numeric_values("low");
  data.X = dm.X;
  return data;
}

}  // namespace

TEST_CASE("log posterior at beta = 0 is -n log 2") {
  const LogisticModelData data = birthwt_model();
  REQUIRE(data.y.size() == 189);
  const VectorXd beta = VectorXd::Zero(11);
  CHECK(logistic_log_posterior(beta, data) ==
        doctest::Approx(-189.0 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("single-point cases, hand-evaluated") {
  LogisticModelData data;
  data.X = MatrixXd::Ones(1, 1);

  data.y = VectorXd::Ones(1);
  VectorXd beta = VectorXd::Constant(1, 10.0);
  CHECK(logistic_log_posterior(beta, data) ==
        doctest::Approx(-std::log1p(std::exp(-10.0)) - 100.0 / 2000.0).epsilon(1e-12));

  data.y = VectorXd::Zero(1);
  beta = VectorXd::Zero(1);
  CHECK(logistic_log_posterior(beta, data) == doctest::Approx(-std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("log1p_exp_neg never overflows") {
  CHECK(log1p_exp_neg(800.0) == doctest::Approx(std::exp(-800.0)));  // ~0 but finite
  CHECK(log1p_exp_neg(-800.0) == doctest::Approx(800.0));
  CHECK(std::isfinite(log1p_exp_neg(-1e8)));
  CHECK(log1p_exp_neg(0.0) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("gradient at beta = 0 is X'(y - 1/2)") {
  const LogisticModelData data = birthwt_model();
  const VectorXd g = logistic_grad(VectorXd::Zero(11), data);
  const VectorXd expected =
      data.X.transpose() * (data.y - VectorXd::Constant(data.y.size(), 0.5));
  CHECK((g - expected).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("analytic gradient matches finite differences at random points") {
  const auto data = std::make_shared<const LogisticModelData>(birthwt_model());
  const TargetDensity target = make_logistic_target(data);
  Rng rng(42);
  for (int rep = 0; rep < 20; ++rep) {
    VectorXd theta(11);
    for (int i = 0; i < 11; ++i) theta[i] = 0.5 * rng.normal();
    const VectorXd ga = target.grad_log_density(theta);
    const VectorXd gn = finite_diff_grad(target.log_density, theta);
    for (int i = 0; i < 11; ++i) {
      if (std::abs(ga[i]) < 1e-3)
        CHECK(std::abs(ga[i] - gn[i]) < 1e-7);
      else
        CHECK(std::abs(ga[i] - gn[i]) / std::abs(ga[i]) < 1e-5);
    }
  }
}

TEST_CASE("posterior is concave along random segments") {
  const LogisticModelData data = birthwt_model();
  Rng rng(314);
  for (int rep = 0; rep < 100; ++rep) {
    VectorXd a(11), b(11);
    for (int i = 0; i < 11; ++i) {
      a[i] = 0.3 * rng.normal();
      b[i] = 0.3 * rng.normal();
    }
    const double fa = logistic_log_posterior(a, data);
    const double fb = logistic_log_posterior(b, data);
    const double fm = logistic_log_posterior(VectorXd(0.5 * (a + b)), data);
    CHECK(fm >= 0.5 * (fa + fb) - 1e-12);
  }
}

TEST_CASE("invalid responses are rejected at construction") {
  LogisticModelData data;
  data.X = MatrixXd::Ones(2, 1);
  data.y = (VectorXd(2) << 0.0, 2.0).finished();
  CHECK_THROWS_AS(data.validate(), DimensionError);
}
