#include <iostream>
#include <utility>

#include <CLI11.hpp>

#include "poincare/config.hpp"
#include "poincare/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Fixed-point construction and verification for Poincare-type linear ODEs"};
  app.require_subcommand(1, 1);
  std::string config_path;
  std::string out_dir;
  const std::pair<const char*, const char*> commands[] = {
      {"roots", "characteristic roots and the simple-real-root check"},
      {"reduce", "write the Omega coefficient table"},
      {"check", "evaluate the hypotheses, write hypotheses.csv"},
      {"solve", "Picard solve for every root, write z_lambda_i.csv and certificates"},
      {"verify", "oracle, Wronskian and envelope diagnostics, write diagnostics.csv"},
      {"all", "roots, reduce, check, solve and verify in order"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config,-c", config_path, "configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out,-o", out_dir, "output directory (overrides the config)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : poincare::pipeline::kUsageError;
  }

  poincare::config::Config config;
  try {
    config = poincare::config::load_config(config_path);
  } catch (const poincare::config::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return poincare::pipeline::kUsageError;
  }
  if (!out_dir.empty()) config.output = out_dir;

  const auto stage = poincare::pipeline::parse_stage(app.get_subcommands().front()->get_name());
  try {
    return poincare::pipeline::run(stage, config, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return poincare::pipeline::kFailure;
  }
}
