#pragma once

#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "poincare/asymptotics.hpp"
#include "poincare/config.hpp"
#include "poincare/hypotheses.hpp"
#include "poincare/reduction.hpp"
#include "poincare/solver.hpp"
#include "poincare/spectral.hpp"

namespace poincare::pipeline {

enum class Stage { Roots, Reduce, Check, Solve, Verify, All };

/// Throws std::invalid_argument for an unknown name.
Stage parse_stage(std::string_view name);

inline constexpr int kSuccess = 0;
inline constexpr int kUsageError = 1;
inline constexpr int kFailure = 2;
inline constexpr int kIndeterminate = 3;

struct DiagnosticRow {
  std::string quantity;
  int i = 0;  // 0: not tied to a root
  int j = 0;
  double t = 0.0;
  double value = 0.0;
  double reference = 0.0;
  std::string verdict;  // pass, fail, indeterminate, info
};

std::string diagnostics_csv(const std::vector<DiagnosticRow>& rows);
/// 0 when every row passes or is informational, 2 on any fail, else 3 on
/// any indeterminate.
int exit_code(const std::vector<DiagnosticRow>& rows);

/// t, z, z1, ..., z{n-2} at the grid nodes.
std::string solution_csv(const solver::Solution& s);
std::string certificate_text(const solver::Solution& s);

/// Runs stages against one config, computing each intermediate once.
/// Files go to config.output; progress text goes to `log`.
class Pipeline {
 public:
  Pipeline(config::Config config, std::ostream& log);

  int run(Stage stage);
  int roots();
  int reduce();
  int check();
  int solve();
  int verify();

  const config::Config& config() const { return config_; }
  const spectral::Spectrum& spectrum();
  const reduction::OmegaTable& table();
  const std::vector<std::shared_ptr<const solver::Solution>>& solutions();
  const asymptotics::FundamentalSystem& fundamental_system();
  const std::vector<DiagnosticRow>& diagnostics() const { return diagnostics_; }

 private:
  void write(const std::string& name, const std::string& content);
  bool spectrum_ok();

  config::Config config_;
  std::ostream& log_;
  std::optional<spectral::Spectrum> spectrum_;
  std::optional<reduction::OmegaTable> table_;
  std::vector<std::shared_ptr<const solver::Solution>> solutions_;
  std::optional<asymptotics::FundamentalSystem> fs_;
  std::vector<DiagnosticRow> diagnostics_;
};

int run(Stage stage, const config::Config& config, std::ostream& log);

}  // namespace poincare::pipeline
