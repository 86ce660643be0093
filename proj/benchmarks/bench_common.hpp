#ifndef HMCGLM_BENCH_COMMON_HPP
#define HMCGLM_BENCH_COMMON_HPP

#include <memory>
#include <string>

#include "hmcglm/design.hpp"
#include "hmcglm/formula.hpp"
#include "hmcglm/models/linear.hpp"
#include "hmcglm/models/logistic.hpp"
#include "hmcglm/models/poisson_glmm.hpp"
#include "hmcglm/table.hpp"

#ifndef HMCGLM_BENCH_DATA_DIR
#define HMCGLM_BENCH_DATA_DIR "data"
#endif

namespace hmcglm::bench {

inline std::string data_path(const std::string& f) {
  return std::string(HMCGLM_BENCH_DATA_DIR) + "/" + f;
}

inline TargetDensity warpbreaks_target() {
  const auto cfg = DatasetConfig::from_json_file(data_path("warpbreaks.json"));
  const auto table = DataTable::from_csv(data_path("warpbreaks.csv"), &cfg);
  const auto dm = build_design(table, parse_formula("breaks ~ wool*tension"));
  auto data = std::make_shared<LinearModelData>();
  data->y = table.numeric_values("breaks");
  data->X = dm.X;
  return make_linear_target(std::move(data));
}

inline TargetDensity birthwt_target() {
  const auto cfg = DatasetConfig::from_json_file(data_path("birthwt.json"));
  const auto table = DataTable::from_csv(data_path("birthwt.csv"), &cfg);
  const auto dm = build_design(
      table, parse_formula("low ~ age + lwt + race2 + smoke + ptd + ht + ui + ftv2"));
  auto data = std::make_shared<LogisticModelData>();
  data->y = table.numeric_values("low");
  data->X = dm.X;
  return make_logistic_target(std::move(data));
}

inline TargetDensity gdat_target() {
  const auto cfg = DatasetConfig::from_json_file(data_path("gdat.json"));
  const auto table = DataTable::from_csv(data_path("gdat.csv"), &cfg);
  const auto dm = build_design(table, parse_formula("shells ~ year + prev"));
  const auto ri = build_random_intercept(table, "Site");
  auto data = std::make_shared<PoissonGlmmData>();
  data->y = table.numeric_values("shells");
  data->X = dm.X;
  data->Z = ri.Z;
  data->n_groups = static_cast<int>(ri.group_levels.size());
  return make_glmm_target(std::move(data));
}

}  // namespace hmcglm::bench

#endif
