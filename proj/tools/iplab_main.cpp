#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "iplab/runner.hpp"

namespace {

iplab::ScenarioConfig load(const std::string& config_path,
                           const std::string& out_dir) {
  iplab::ScenarioConfig cfg = iplab::load_config(config_path);
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"iplab: interaction-picture quantum dynamics laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "scenario config file")
        ->required();
    sub->add_option("--out", out_dir, "output directory override");
  };

  CLI::App* cmd_solve =
      app.add_subcommand("solve", "exact interaction-picture solution only");
  CLI::App* cmd_integrate =
      app.add_subcommand("integrate", "split-step grid integration only");
  CLI::App* cmd_run = app.add_subcommand(
      "run", "exact solve + grid integration + diagnostics and checks");
  CLI::App* cmd_compare = app.add_subcommand(
      "compare", "print three-way centroid and variance tables");
  for (CLI::App* sub : {cmd_solve, cmd_integrate, cmd_run, cmd_compare}) {
    add_common(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const iplab::ScenarioConfig cfg = load(config_path, out_dir);
    if (cmd_solve->parsed()) {
      iplab::run_solve(cfg);
    } else if (cmd_integrate->parsed()) {
      iplab::run_integrate(cfg);
    } else if (cmd_compare->parsed()) {
      iplab::run_compare(cfg, std::cout);
    } else {
      const iplab::RunResult result = iplab::run_scenario(cfg);
      for (const auto& c : result.checks) {
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name
                  << ": observed=" << iplab::format_csv_double(c.observed)
                  << " tol=" << iplab::format_csv_double(c.tolerance) << "\n";
      }
      if (!result.all_pass()) {
        std::cerr << "numerical checks failed\n";
        return 1;
      }
    }
  } catch (const iplab::ConfigurationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const iplab::InvalidIntervalError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
