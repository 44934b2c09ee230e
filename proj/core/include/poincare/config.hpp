#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "poincare/problem.hpp"
#include "poincare/solver.hpp"

namespace poincare::config {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line = 0);
  int line() const { return line_; }  // 0 when not tied to a line

 private:
  int line_;
};

/// Run configuration. Text form is one `key = value` per line, `#` starts a
/// comment, values are numbers, quoted strings or bracketed lists of them:
///
///   n = 3
///   a = [-6, 11, -6]
///   r = ["1/(1+t)^3", "0", "0"]
struct Config {
  Problem problem;
  double t_max = 0.0;  // 0: solver default
  int grid_points = 24;
  double tol = 1e-10;
  double eta = 0.5;
  int max_iter = 200;
  std::map<int, double> beta;  // beta_<i> overrides
  std::filesystem::path output = "out";

  double hypotheses_t_max = 100.0;
  double window_lo = 10.0;
  double window_hi = 100.0;
  double diag_t = 50.0;
  double refined_t = 20.0;
  double oracle_t_end = 10.0;
  double oracle_tol = 1e-10;

  solver::SolveOptions solve_options() const;
};

Config parse_config(std::string_view text);
Config load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config(to_text(c)) reproduces c.
std::string to_text(const Config& c);

}  // namespace poincare::config
