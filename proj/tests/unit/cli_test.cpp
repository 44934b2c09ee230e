#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "poincare/pipeline.hpp"

using namespace poincare;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("poincare_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

config::Config e1_config(const fs::path& out) {
  auto c = config::load_config(fs::path(POINCARE_SOURCE_DIR) / "configs" / "e1.cfg");
  c.output = out;
  return c;
}

int line_of_error(const std::string& text) {
  try {
    config::parse_config(text);
  } catch (const config::ConfigError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST(Config, MinimalUsesDefaults) {
  const auto c = config::parse_config("n = 2\na = [-1, 0]\nr = [\"exp(-t)\", \"0\"]\n");
  EXPECT_EQ(c.problem.order, 2);
  EXPECT_EQ(c.problem.a, (std::vector<double>{-1.0, 0.0}));
  EXPECT_EQ(c.problem.r[0].to_string(), "exp(-t)");
  EXPECT_TRUE(c.problem.r[1].is_zero_literal());
  EXPECT_EQ(c.grid_points, 24);
  EXPECT_DOUBLE_EQ(c.tol, 1e-10);
  EXPECT_DOUBLE_EQ(c.eta, 0.5);
  EXPECT_EQ(c.max_iter, 200);
  EXPECT_TRUE(c.beta.empty());
  EXPECT_EQ(c.output, fs::path("out"));
}

TEST(Config, ShippedE1) {
  const auto c = e1_config("x");
  EXPECT_EQ(c.problem.order, 3);
  EXPECT_EQ(c.problem.a, (std::vector<double>{-6.0, 11.0, -6.0}));
  EXPECT_DOUBLE_EQ(c.problem.r[0].evaluate(1.0), 0.125);
  EXPECT_DOUBLE_EQ(c.t_max, 200.0);
  EXPECT_DOUBLE_EQ(c.beta.at(3), 0.5);
  const auto o = c.solve_options();
  EXPECT_DOUBLE_EQ(o.t_max, 200.0);
  EXPECT_EQ(o.grid_points, 24);
}

TEST(Config, CommentsAndQuotedHashes) {
  const auto c = config::parse_config("# header\nn = 2  # order\na = [0, 0]\nr = [\"0\", \"0\"]\noutput = \"a#b\"\n");
  EXPECT_EQ(c.output, fs::path("a#b"));
}

TEST(Config, ErrorsCarryLineNumbers) {
  EXPECT_EQ(line_of_error("n = 2\na = [0, 0]\nr = [\"0\", \"0\"]\nbogus = 1\n"), 4);
  EXPECT_EQ(line_of_error("n = 2\na = [0]\nr = [\"0\", \"0\"]\n"), 2);
  EXPECT_EQ(line_of_error("n = 2\na = [0, 0]\nr = [\"0\", \"log(\"]\n"), 3);
  EXPECT_EQ(line_of_error("n = 2\nn = 3\n"), 2);
  EXPECT_EQ(line_of_error("n = 2\na = [0, 0]\nr = [\"0\", \"0\"]\neta = 1.5\n"), 4);
  EXPECT_EQ(line_of_error("n = 2\na = [0, 0]\nr = [\"0\", \"0\"]\ngrid_points = 8\n"), 4);
  EXPECT_EQ(line_of_error("n = 2\na = [0, 0]\nr = [\"0\", \"0\"]\nbeta_5 = 1\n"), 4);
  EXPECT_EQ(line_of_error("n = 2\na = [0, 0]\nwhat\n"), 3);
  EXPECT_EQ(line_of_error("a = [0, 0]\n"), 0);
  EXPECT_THROW(config::load_config("/nonexistent/file.cfg"), config::ConfigError);
}

TEST(Config, TextRoundTrip) {
  const auto c = e1_config("out/somewhere");
  const auto back = config::parse_config(config::to_text(c));
  EXPECT_EQ(config::to_text(back), config::to_text(c));
  EXPECT_EQ(back.problem.a, c.problem.a);
  EXPECT_EQ(back.beta, c.beta);
  EXPECT_EQ(back.output, c.output);
  EXPECT_TRUE(back.problem.r[0] == c.problem.r[0]);
}

TEST(Pipeline, StageNames) {
  EXPECT_EQ(pipeline::parse_stage("roots"), pipeline::Stage::Roots);
  EXPECT_EQ(pipeline::parse_stage("all"), pipeline::Stage::All);
  EXPECT_THROW(pipeline::parse_stage("everything"), std::invalid_argument);
}

TEST(Pipeline, RootsOnE1) {
  std::ostringstream log;
  pipeline::Pipeline p(e1_config(scratch("roots")), log);
  EXPECT_EQ(p.roots(), pipeline::kSuccess);
  EXPECT_NE(log.str().find("Lambda = 3, 2, 1"), std::string::npos) << log.str();
  EXPECT_NE(log.str().find("H1 pass"), std::string::npos);
}

TEST(Pipeline, ComplexRootsStop) {
  auto c = config::parse_config("n = 2\na = [1, 0]\nr = [\"0\", \"0\"]\n");
  c.output = scratch("complex");
  std::ostringstream log;
  EXPECT_EQ(pipeline::run(pipeline::Stage::All, c, log), pipeline::kFailure);
  EXPECT_NE(log.str().find("H1 fail"), std::string::npos);
  EXPECT_FALSE(fs::exists(c.output / "z_lambda_1.csv"));
}

TEST(Pipeline, UnperturbedSolveIsZero) {
  auto c = config::parse_config("n = 3\na = [-6, 11, -6]\nr = [\"0\", \"0\", \"0\"]\nt_max = 40\n");
  c.output = scratch("trivial");
  std::ostringstream log;
  EXPECT_EQ(pipeline::run(pipeline::Stage::Solve, c, log), pipeline::kSuccess);
  for (int i = 1; i <= 3; ++i) {
    std::istringstream csv(slurp(c.output / ("z_lambda_" + std::to_string(i) + ".csv")));
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "t,z,z1");
    int rows = 0;
    while (std::getline(csv, line)) {
      ++rows;
      std::istringstream fields(line);
      std::string cell;
      std::getline(fields, cell, ',');
      while (std::getline(fields, cell, ',')) EXPECT_EQ(std::stod(cell), 0.0) << line;
    }
    EXPECT_GT(rows, 16);
    EXPECT_NE(slurp(c.output / ("certificate_" + std::to_string(i) + ".txt")).find("iterations"), std::string::npos);
  }
}

TEST(Pipeline, AllOnE1) {
  const auto out = scratch("all");
  std::ostringstream log;
  pipeline::Pipeline p(e1_config(out), log);
  EXPECT_EQ(p.run(pipeline::Stage::All), pipeline::kSuccess) << log.str();
  for (const char* name : {"omega_table.txt", "printed_crosscheck.txt", "hypotheses.csv", "z_lambda_1.csv",
                           "z_lambda_2.csv", "z_lambda_3.csv", "certificate_1.txt", "certificate_2.txt",
                           "certificate_3.txt", "diagnostics.csv"}) {
    EXPECT_TRUE(fs::exists(out / name)) << name;
  }
  const auto diag = slurp(out / "diagnostics.csv");
  EXPECT_EQ(diag.rfind("quantity,i,j,t,value,reference,verdict\n", 0), 0u);
  EXPECT_EQ(diag.find(",fail\n"), std::string::npos) << diag;
  EXPECT_EQ(pipeline::exit_code(p.diagnostics()), pipeline::kSuccess);
}

TEST(Pipeline, Deterministic) {
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  std::ostringstream log;
  ASSERT_EQ(pipeline::run(pipeline::Stage::Solve, e1_config(a), log), pipeline::kSuccess);
  ASSERT_EQ(pipeline::run(pipeline::Stage::Solve, e1_config(b), log), pipeline::kSuccess);
  for (int i = 1; i <= 3; ++i) {
    const auto name = "z_lambda_" + std::to_string(i) + ".csv";
    EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
  }
}

TEST(Pipeline, ExitCodeRules) {
  std::vector<pipeline::DiagnosticRow> rows(2);
  rows[0].verdict = "pass";
  rows[1].verdict = "info";
  EXPECT_EQ(pipeline::exit_code(rows), pipeline::kSuccess);
  rows[1].verdict = "indeterminate";
  EXPECT_EQ(pipeline::exit_code(rows), pipeline::kIndeterminate);
  rows[0].verdict = "fail";
  EXPECT_EQ(pipeline::exit_code(rows), pipeline::kFailure);
}
