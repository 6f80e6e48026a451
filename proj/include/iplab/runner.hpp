#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "iplab/classical_oracle.hpp"
#include "iplab/diagnostics.hpp"
#include "iplab/grid_integrator.hpp"

namespace iplab {

struct GridSpec {
  bool automatic = true;
  double x_min = -10.0;
  double x_max = 10.0;
  int n_points = kDefaultGridPoints;
};

/// Parsed scenario run configuration. Flat key=value text, one key per line,
/// '#' starts a comment. Every key has a default except `scenario`.
struct ScenarioConfig {
  Scenario scenario;
  GridSpec grid;
  double dt = kDefaultTimeStep;
  double t_final = 2.0;
  int snapshot_every = 100;
  std::string output_dir = ".";
};

ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::string& path);

/// One tolerance check reported in summary.txt.
struct CheckResult {
  std::string name;
  double observed = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// One row of diagnostics.csv: the grid field's report plus the
/// interaction-picture moments and the two reference trajectories.
struct DiagnosticsRow {
  FieldReport phi;
  double centroid_psi = 0.0;
  double variance_psi = 0.0;
  double predicted_centroid = 0.0;
  double classical_x = 0.0;
};

struct RunResult {
  std::vector<DiagnosticsRow> rows;
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

/// Full pipeline: exact solve, grid integration, classical oracle,
/// diagnostics. Writes field.csv, diagnostics.csv, and summary.txt into the
/// configured output directory and returns the checks.
RunResult run_scenario(const ScenarioConfig& config);

/// Exact solution only; writes field.csv with columns t,x,re_psi,im_psi,abs2.
void run_solve(const ScenarioConfig& config);

/// Grid integration only; writes field.csv with columns
/// t,x,re_phi,im_phi,abs2_phi.
void run_integrate(const ScenarioConfig& config);

/// Prints the three-way centroid table and the variance tables for both
/// pictures to the stream.
void run_compare(const ScenarioConfig& config, std::ostream& out);

/// Internal parallelism cap from the IPLAB_THREADS environment variable
/// (default 1, serial).
int thread_cap();

/// Decimal with 17 significant digits; round-trips exactly.
std::string format_csv_double(double v);

}  // namespace iplab
