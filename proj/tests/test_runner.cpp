#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "iplab/runner.hpp"

using namespace iplab;

namespace {

ScenarioConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

}  // namespace

TEST_CASE("config parsing fills defaults and honors overrides") {
  const ScenarioConfig cfg = parse(
      "# comment line\n"
      "scenario = driven-oscillator\n"
      "lambda = 0.5\n"
      "dt = 2e-3   # trailing comment\n");
  CHECK(cfg.scenario.kind == ScenarioKind::DrivenOscillator);
  CHECK(cfg.scenario.lambda == 0.5);
  CHECK(cfg.scenario.alpha == -1.0);
  CHECK(cfg.scenario.beta == 1.0);
  CHECK(cfg.dt == 2e-3);
  CHECK(cfg.t_final == 2.0);
  CHECK(cfg.snapshot_every == 100);
  CHECK(cfg.grid.automatic);
  CHECK(cfg.grid.n_points == 2048);
}

TEST_CASE("config parsing rejects malformed input") {
  CHECK_THROWS_AS(parse(""), ConfigurationError);
  CHECK_THROWS_AS(parse("scenario = warp-drive\n"), ConfigurationError);
  CHECK_THROWS_AS(parse("scenario = free-kick\nunknown_key = 1\n"),
                  ConfigurationError);
  CHECK_THROWS_AS(parse("scenario = free-kick\nalpha = 2\nbeta = 1\n"),
                  ConfigurationError);
  CHECK_THROWS_AS(parse("scenario = free-kick\ndt = -1\n"),
                  ConfigurationError);
  CHECK_THROWS_AS(parse("scenario = free-kick\nlambda = oops\n"),
                  ConfigurationError);
  CHECK_THROWS_AS(parse("scenario = free-kick\nno equals sign\n"),
                  ConfigurationError);
}

TEST_CASE("ramp and table switch profiles parse from the flat keys") {
  const ScenarioConfig ramp = parse(
      "scenario = free-kick\ntheta = ramp\ntheta_rate = 0.25\n");
  CHECK(ramp.scenario.theta.kind() == ProfileKind::Ramp);
  CHECK(ramp.scenario.theta.rate() == 0.25);

  const ScenarioConfig table = parse(
      "scenario = free-kick\ntheta = table\n"
      "theta_samples = 0:0; 0.5:1; 2:0.5\n");
  CHECK(table.scenario.theta.kind() == ProfileKind::Table);
  CHECK(table.scenario.theta.samples().size() == 3);
  CHECK(table.scenario.theta.value(0.25) == doctest::Approx(0.5));
}

TEST_CASE("manual grid keys switch the grid out of auto mode") {
  const ScenarioConfig cfg = parse(
      "scenario = free-kick\nx_min = -12\nx_max = 20\nn_points = 512\n");
  CHECK_FALSE(cfg.grid.automatic);
  CHECK(cfg.grid.x_min == -12.0);
  CHECK(cfg.grid.x_max == 20.0);
  CHECK(cfg.grid.n_points == 512);
}

TEST_CASE("csv doubles round-trip exactly") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 50; ++i) {
    const double v = std::ldexp(static_cast<double>(rng()) -
                                    static_cast<double>(rng() / 2),
                                -static_cast<int>(rng() % 64));
    CHECK(std::strtod(format_csv_double(v).c_str(), nullptr) == v);
  }
  CHECK(format_csv_double(2.0) == "2");
}

TEST_CASE("a full default run passes every asserted tolerance") {
  ScenarioConfig cfg = parse("scenario = free-kick\n");
  cfg.output_dir = "runner_out/freekick_default";
  const RunResult result = run_scenario(cfg);
  REQUIRE(result.checks.size() == 5);
  for (const auto& check : result.checks) {
    INFO(check.name, " observed=", check.observed, " tol=", check.tolerance);
    CHECK(check.pass);
  }
  // The final row sits at t = 2 with the interaction-picture density there.
  REQUIRE(!result.rows.empty());
  CHECK(result.rows.back().phi.time == doctest::Approx(2.0));
  CHECK(result.rows.back().centroid_psi == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(result.rows.back().classical_x == doctest::Approx(2.0).epsilon(1e-9));

  CHECK(first_line(slurp("runner_out/freekick_default/field.csv")) ==
        "t,x,re_psi,im_psi,abs2,re_phi,im_phi,abs2_phi");
  CHECK(first_line(slurp("runner_out/freekick_default/diagnostics.csv")) ==
        "t,norm,centroid_psi,variance_psi,centroid_phi,variance_phi,"
        "support_mass_outside,fidelity_vs_exact,predicted_centroid,"
        "classical_x");
  const std::string summary = slurp("runner_out/freekick_default/summary.txt");
  CHECK(summary.find("RESULT: PASS") != std::string::npos);
  CHECK(summary.find("normalization: L2") != std::string::npos);
}

TEST_CASE("identical configs produce byte-identical outputs") {
  ScenarioConfig cfg = parse(
      "scenario = kicked-oscillator\nt_final = 0.5\nsnapshot_every = 250\n");
  cfg.output_dir = "runner_out/det_a";
  run_scenario(cfg);
  cfg.output_dir = "runner_out/det_b";
  run_scenario(cfg);
  CHECK(slurp("runner_out/det_a/field.csv") ==
        slurp("runner_out/det_b/field.csv"));
  CHECK(slurp("runner_out/det_a/diagnostics.csv") ==
        slurp("runner_out/det_b/diagnostics.csv"));
}

TEST_CASE("oscillator run keeps cross-validation fidelity in every row") {
  ScenarioConfig cfg = parse(
      "scenario = driven-oscillator\n"
      "t_final = 3.141592653589793\n"
      "snapshot_every = 785\n");
  cfg.output_dir = "runner_out/driven_half_period";
  const RunResult result = run_scenario(cfg);
  CHECK(result.all_pass());
  for (const auto& row : result.rows) {
    CHECK(row.phi.fidelity_vs_exact >= 1.0 - 1e-6);
  }
}

TEST_CASE("a zero-coupling run leaves every centroid at the bump center") {
  ScenarioConfig cfg = parse(
      "scenario = constant-field\nlambda = 0\nt_final = 0.5\n"
      "snapshot_every = 250\n");
  cfg.output_dir = "runner_out/zero_lambda";
  const RunResult result = run_scenario(cfg);
  CHECK(result.all_pass());
  for (const auto& row : result.rows) {
    CHECK(std::abs(row.predicted_centroid) < 1e-9);
    CHECK(std::abs(row.classical_x) < 1e-9);
    CHECK(std::abs(row.phi.centroid) < 1e-6);
    CHECK(std::abs(row.centroid_psi) < 1e-9);
  }
}

TEST_CASE("compare prints the three-way and variance tables") {
  ScenarioConfig cfg = parse(
      "scenario = free-kick\nt_final = 0.4\nsnapshot_every = 200\n");
  std::ostringstream out;
  run_compare(cfg, out);
  const std::string text = out.str();
  CHECK(text.find("three-way centroid") != std::string::npos);
  CHECK(text.find("variance by picture") != std::string::npos);
  CHECK(text.find("classical") != std::string::npos);
}

#ifdef IPLAB_CLI_PATH
TEST_CASE("the command-line tool maps failures to the documented exit codes") {
  const std::string cli = IPLAB_CLI_PATH;
  {
    std::ofstream cfg("runner_out/bad.cfg");
    cfg << "scenario = free-kick\nalpha = 2\nbeta = 1\n";
  }
  {
    std::ofstream cfg("runner_out/good.cfg");
    cfg << "scenario = free-kick\nt_final = 0.3\nsnapshot_every = 300\n";
  }
  const int bad = std::system(
      (cli + " run --config runner_out/bad.cfg --out runner_out/cli_bad "
             ">/dev/null 2>&1")
          .c_str());
  CHECK(WEXITSTATUS(bad) == 2);
  const int missing = std::system(
      (cli + " run --config runner_out/nonexistent.cfg >/dev/null 2>&1")
          .c_str());
  CHECK(WEXITSTATUS(missing) == 2);
  const int good = std::system(
      (cli + " solve --config runner_out/good.cfg --out runner_out/cli_good "
             ">/dev/null 2>&1")
          .c_str());
  CHECK(WEXITSTATUS(good) == 0);
  CHECK(first_line(slurp("runner_out/cli_good/field.csv")) ==
        "t,x,re_psi,im_psi,abs2");
  const int run = std::system(
      (cli + " run --config runner_out/good.cfg --out runner_out/cli_run "
             ">/dev/null 2>&1")
          .c_str());
  CHECK(WEXITSTATUS(run) == 0);
}
#endif
