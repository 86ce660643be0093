#include <doctest.h>

#include <fstream>

#include "hmcglm/design.hpp"
#include "hmcglm/errors.hpp"
#include "hmcglm/formula.hpp"
#include "hmcglm/table.hpp"
#include "test_helpers.hpp"

using namespace hmcglm;

TEST_CASE("formula: crossing expands to main effects plus interaction") {
  const FormulaAst ast = parse_formula("breaks ~ wool*tension");
  CHECK(ast.response == "breaks");
  REQUIRE(ast.terms.size() == 3);
  CHECK(ast.terms[0] == std::vector<std::string>{"wool"});
  CHECK(ast.terms[1] == std::vector<std::string>{"tension"});
  CHECK((ast.terms[2] == std::vector<std::string>{"wool", "tension"}));
  CHECK(ast.intercept);
}

TEST_CASE("formula: additive terms") {
  const FormulaAst ast = parse_formula("y ~ a + b");
  REQUIRE(ast.terms.size() == 2);
  CHECK(ast.terms[0] == std::vector<std::string>{"a"});
  CHECK(ast.terms[1] == std::vector<std::string>{"b"});
}

TEST_CASE("formula: the eight-term main-effect model") {
  const FormulaAst ast = parse_formula("low ~ age + lwt + race2 + smoke + ptd + ht + ui + ftv2");
  CHECK(ast.response == "low");
  CHECK(ast.terms.size() == 8);
  for (const auto& t : ast.terms) CHECK(t.size() == 1);
}

TEST_CASE("formula: duplicates collapse, main effects precede interactions") {
  const FormulaAst ast = parse_formula("y ~ a + a + a:b + b*a");
  REQUIRE(ast.terms.size() == 3);
  CHECK(ast.terms[0] == std::vector<std::string>{"a"});
  CHECK(ast.terms[1] == std::vector<std::string>{"b"});
  CHECK((ast.terms[2] == std::vector<std::string>{"a", "b"}));

  // a bare interaction pulls in its missing main effects first
  const FormulaAst bare = parse_formula("y ~ a:b");
  REQUIRE(bare.terms.size() == 3);
  CHECK(bare.terms[0] == std::vector<std::string>{"a"});
  CHECK(bare.terms[1] == std::vector<std::string>{"b"});
}

TEST_CASE("formula: syntax errors carry a byte offset") {
  CHECK_THROWS_AS(parse_formula("y a + b"), DataError);
  CHECK_THROWS_AS(parse_formula("~ a"), DataError);
  CHECK_THROWS_AS(parse_formula("y ~ a +"), DataError);
  CHECK_THROWS_AS(parse_formula("y ~ a ? b"), DataError);
  try {
    parse_formula("y ~ a ? b");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("byte 6") != std::string::npos);
  }
}

TEST_CASE("warpbreaks design: 54 x 6 with the standard names") {
  const auto cfg = DatasetConfig::from_json_file(test::data_path("warpbreaks.json"));
  const auto table = DataTable::from_csv(test::data_path("warpbreaks.csv"), &cfg);
  const auto dm = build_design(table, parse_formula("breaks ~ wool*tension"));

  CHECK(dm.X.rows() == 54);
  CHECK(dm.X.cols() == 6);
  const std::vector<std::string> expected = {"(Intercept)", "woolB",          "tensionM",
                                             "tensionH",    "woolB:tensionM", "woolB:tensionH"};
  CHECK(dm.names == expected);

  // treatment coding: indicator columns of a factor sum to 1 - reference indicator
  for (Eigen::Index r = 0; r < 54; ++r) {
    const double tension_sum = dm.X(r, 2) + dm.X(r, 3);
    CHECK((tension_sum == 0.0 || tension_sum == 1.0));
  }
  // interaction columns are products
  CHECK(dm.X.col(4) == dm.X.col(1).cwiseProduct(dm.X.col(2)));
  CHECK(dm.X.col(5) == dm.X.col(1).cwiseProduct(dm.X.col(3)));
}

TEST_CASE("numeric-only design passes columns through") {
  DataTable table = DataTable::from_csv(test::data_path("gdat.csv"));
  const auto dm = build_design(table, parse_formula("shells ~ prev"));
  CHECK(dm.names == std::vector<std::string>{"(Intercept)", "prev"});
  CHECK(dm.X.col(1) == table.numeric_values("prev"));
}

TEST_CASE("birthwt design: 189 x 11 with the published row names") {
  const auto cfg = DatasetConfig::from_json_file(test::data_path("birthwt.json"));
  const auto table = DataTable::from_csv(test::data_path("birthwt.csv"), &cfg);
  const auto dm =
      build_design(table, parse_formula("low ~ age + lwt + race2 + smoke + ptd + ht + ui + ftv2"));
  CHECK(dm.X.rows() == 189);
  CHECK(dm.X.cols() == 11);
  const std::vector<std::string> expected = {"(Intercept)", "age",  "lwt", "race2black",
                                             "race2other",  "smoke", "ptd", "ht",
                                             "ui",          "ftv21", "ftv22+"};
  CHECK(dm.names == expected);
}

TEST_CASE("random intercept matrix for gdat: 30 x 10, column sums 3") {
  const auto cfg = DatasetConfig::from_json_file(test::data_path("gdat.json"));
  const auto table = DataTable::from_csv(test::data_path("gdat.csv"), &cfg);
  const auto ri = build_random_intercept(table, "Site");
  CHECK(ri.Z.rows() == 30);
  CHECK(ri.Z.cols() == 10);
  CHECK(ri.group_levels.size() == 10);
  CHECK(ri.group_levels[0] == "BS");
  for (Eigen::Index c = 0; c < 10; ++c) CHECK(ri.Z.col(c).sum() == doctest::Approx(3.0));
  for (Eigen::Index r = 0; r < 30; ++r) CHECK(ri.Z.row(r).sum() == doctest::Approx(1.0));
}

TEST_CASE("single-group intercept is a column of ones") {
  DatasetConfig cfg;
  cfg.columns = {{"g", ColumnType::Factor, {}}, {"y", ColumnType::Numeric, {}}};
  const std::string tmp = "/tmp/hmcglm_test_single_group.csv";
  {
    std::ofstream out(tmp);
    out << "g,y\nA,1\nA,2\nA,3\n";
  }
  const auto table = DataTable::from_csv(tmp, &cfg);
  const auto ri = build_random_intercept(table, "g");
  CHECK(ri.Z.cols() == 1);
  CHECK(ri.Z.col(0).sum() == doctest::Approx(3.0));
}

TEST_CASE("design errors: unknown variable, degenerate factor") {
  const auto table = DataTable::from_csv(test::data_path("warpbreaks.csv"));
  CHECK_THROWS_AS(build_design(table, parse_formula("breaks ~ nothere")), DataError);

  const std::string tmp = "/tmp/hmcglm_test_one_level.csv";
  {
    std::ofstream out(tmp);
    out << "f,y\nonly,1\nonly,2\n";
  }
  DatasetConfig cfg;
  cfg.columns = {{"f", ColumnType::Factor, {}}, {"y", ColumnType::Numeric, {}}};
  const auto t2 = DataTable::from_csv(tmp, &cfg);
  CHECK_THROWS_AS(build_design(t2, parse_formula("y ~ f")), DataError);
}

TEST_CASE("dataset config pins factor levels; stray values are rejected") {
  const auto cfg = DatasetConfig::from_json_file(test::data_path("gdat.json"));
  const auto table = DataTable::from_csv(test::data_path("gdat.csv"), &cfg);
  const Column& year = table.column("year");
  CHECK(year.levels == std::vector<std::string>{"2004", "2005", "2006"});

  const std::string tmp = "/tmp/hmcglm_test_bad_level.csv";
  {
    std::ofstream out(tmp);
    out << "Site,year,shells,prev\nXX,2004,0,1\n";
  }
  CHECK_THROWS_AS(DataTable::from_csv(tmp, &cfg), DataError);
}

TEST_CASE("CSV reader catches ragged rows and bad numbers") {
  const std::string tmp = "/tmp/hmcglm_test_bad.csv";
  {
    std::ofstream out(tmp);
    out << "a,b\n1,2\n3\n";
  }
  CHECK_THROWS_AS(DataTable::from_csv(tmp), DataError);

  {
    std::ofstream out(tmp);
    out << "a\nx\n";
  }
  DatasetConfig cfg;
  cfg.columns = {{"a", ColumnType::Numeric, {}}};
  CHECK_THROWS_AS(DataTable::from_csv(tmp, &cfg), DataError);
}
