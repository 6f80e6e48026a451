#include "iplab/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace iplab {

namespace {

// Tolerances asserted by `run`, mirrored in summary.txt.
constexpr double kNormDriftTol = 1e-9;
constexpr double kFidelityDeficitTol = 1e-6;
constexpr double kVarianceDriftTol = 1e-12;
constexpr double kPredictedVsClassicalTol = 1e-6;
constexpr double kPredictedVsGridTol = 1e-3;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigurationError("invalid number for key '" + key + "': " + value);
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigurationError("invalid integer for key '" + key +
                             "': " + value);
  }
}

std::vector<std::pair<double, double>> parse_samples(const std::string& v) {
  std::vector<std::pair<double, double>> samples;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw ConfigurationError("theta_samples entries must be t:value pairs");
    }
    samples.emplace_back(parse_double("theta_samples", trim(item.substr(0, colon))),
                         parse_double("theta_samples", trim(item.substr(colon + 1))));
  }
  if (samples.empty()) {
    throw ConfigurationError("theta_samples must contain at least one pair");
  }
  return samples;
}

}  // namespace

int thread_cap() {
  const char* env = std::getenv("IPLAB_THREADS");
  if (env == nullptr) return 1;
  const int n = std::atoi(env);
  return std::clamp(n, 1, 64);
}

std::string format_csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ScenarioConfig parse_config(std::istream& in) {
  ScenarioConfig cfg;
  bool have_scenario = false;
  std::string theta_kind = "heaviside";
  double theta_rate = 1.0;
  std::vector<std::pair<double, double>> theta_samples;
  bool manual_grid = false;

  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigurationError("expected key=value, got: " + line);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) throw ConfigurationError("empty value for key " + key);

    if (key == "scenario") {
      const auto kind = scenario_from_string(value);
      if (!kind) throw ConfigurationError("unknown scenario: " + value);
      cfg.scenario.kind = *kind;
      have_scenario = true;
    } else if (key == "lambda") {
      cfg.scenario.lambda = parse_double(key, value);
    } else if (key == "theta") {
      if (value != "heaviside" && value != "ramp" && value != "table") {
        throw ConfigurationError("unknown theta kind: " + value);
      }
      theta_kind = value;
    } else if (key == "theta_rate") {
      theta_rate = parse_double(key, value);
    } else if (key == "theta_samples") {
      theta_samples = parse_samples(value);
    } else if (key == "alpha") {
      cfg.scenario.alpha = parse_double(key, value);
    } else if (key == "beta") {
      cfg.scenario.beta = parse_double(key, value);
    } else if (key == "grid") {
      if (value == "auto") {
        manual_grid = false;
      } else if (value == "manual") {
        manual_grid = true;
      } else {
        throw ConfigurationError("grid must be auto or manual, got: " + value);
      }
    } else if (key == "x_min") {
      cfg.grid.x_min = parse_double(key, value);
      manual_grid = true;
    } else if (key == "x_max") {
      cfg.grid.x_max = parse_double(key, value);
      manual_grid = true;
    } else if (key == "n_points") {
      cfg.grid.n_points = parse_int(key, value);
    } else if (key == "dt") {
      cfg.dt = parse_double(key, value);
    } else if (key == "t_final") {
      cfg.t_final = parse_double(key, value);
    } else if (key == "snapshot_every") {
      cfg.snapshot_every = parse_int(key, value);
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else {
      throw ConfigurationError("unknown config key: " + key);
    }
  }

  if (!have_scenario) throw ConfigurationError("config must set scenario");
  if (!(cfg.scenario.alpha < cfg.scenario.beta)) {
    throw ConfigurationError("config requires alpha < beta");
  }
  if (!(cfg.dt > 0.0)) throw ConfigurationError("config requires dt > 0");
  if (!(cfg.t_final > 0.0)) {
    throw ConfigurationError("config requires t_final > 0");
  }
  if (cfg.snapshot_every < 1) {
    throw ConfigurationError("config requires snapshot_every >= 1");
  }
  if (!std::isfinite(cfg.scenario.lambda)) {
    throw ConfigurationError("config requires finite lambda");
  }

  if (theta_kind == "heaviside") {
    cfg.scenario.theta = SwitchingProfile::heaviside();
  } else if (theta_kind == "ramp") {
    cfg.scenario.theta = SwitchingProfile::ramp(theta_rate);
  } else {
    cfg.scenario.theta = SwitchingProfile::table(theta_samples);
  }
  cfg.grid.automatic = !manual_grid;
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open config file: " + path);
  return parse_config(in);
}

bool RunResult::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

namespace {

Grid grid_for(const ScenarioConfig& cfg) {
  if (cfg.grid.automatic) {
    return auto_grid(cfg.scenario, cfg.t_final, cfg.grid.n_points);
  }
  return make_grid(cfg.grid.x_min, cfg.grid.x_max, cfg.grid.n_points);
}

std::filesystem::path prepare_output_dir(const ScenarioConfig& cfg) {
  const std::filesystem::path dir(cfg.output_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void write_field_header(std::ofstream& out, bool psi, bool phi) {
  out << "t,x";
  if (psi) out << ",re_psi,im_psi,abs2";
  if (phi) out << ",re_phi,im_phi,abs2_phi";
  out << "\n";
}

void write_field_rows(std::ofstream& out, const WaveField* psi,
                      const WaveField* phi, double t) {
  const Grid& grid = psi != nullptr ? psi->grid : phi->grid;
  const std::string t_str = format_csv_double(t);
  for (int j = 0; j < grid.n_points; ++j) {
    out << t_str << ',' << format_csv_double(grid.x(j));
    if (psi != nullptr) {
      const auto v = psi->values[static_cast<std::size_t>(j)];
      out << ',' << format_csv_double(v.real()) << ','
          << format_csv_double(v.imag()) << ','
          << format_csv_double(std::norm(v));
    }
    if (phi != nullptr) {
      const auto v = phi->values[static_cast<std::size_t>(j)];
      out << ',' << format_csv_double(v.real()) << ','
          << format_csv_double(v.imag()) << ','
          << format_csv_double(std::norm(v));
    }
    out << "\n";
  }
}

std::vector<CheckResult> build_checks(const std::vector<DiagnosticsRow>& rows) {
  double norm_drift = 0.0;
  double fidelity_deficit = 0.0;
  double variance_drift = 0.0;
  double pred_vs_classical = 0.0;
  double pred_vs_grid = 0.0;
  const double var0 = rows.empty() ? 0.0 : rows.front().variance_psi;
  const double norm0 = rows.empty() ? 1.0 : rows.front().phi.norm;
  for (const auto& r : rows) {
    norm_drift = std::max(norm_drift, std::abs(r.phi.norm - norm0));
    fidelity_deficit =
        std::max(fidelity_deficit, 1.0 - r.phi.fidelity_vs_exact);
    variance_drift = std::max(variance_drift, std::abs(r.variance_psi - var0));
    pred_vs_classical = std::max(
        pred_vs_classical, std::abs(r.predicted_centroid - r.classical_x));
    pred_vs_grid = std::max(
        pred_vs_grid, std::abs(r.predicted_centroid - r.phi.centroid));
  }
  auto check = [](std::string name, double observed, double tol) {
    return CheckResult{std::move(name), observed, tol, observed <= tol};
  };
  return {
      check("norm_drift_max", norm_drift, kNormDriftTol),
      check("fidelity_deficit_max", fidelity_deficit, kFidelityDeficitTol),
      check("interaction_variance_drift_max", variance_drift,
            kVarianceDriftTol),
      check("predicted_vs_classical_max", pred_vs_classical,
            kPredictedVsClassicalTol),
      check("predicted_vs_grid_centroid_max", pred_vs_grid,
            kPredictedVsGridTol),
  };
}

void write_summary(const std::filesystem::path& path,
                   const ScenarioConfig& cfg, const Grid& grid,
                   const RunResult& result) {
  std::ofstream out(path);
  out << "scenario: " << to_string(cfg.scenario.kind) << "\n";
  out << "normalization: L2 (norm_const fixed by int K^2 dx = 1)\n";
  out << "grid: x_min=" << format_csv_double(grid.x_min)
      << " x_max=" << format_csv_double(grid.x_max)
      << " n_points=" << grid.n_points << "\n";
  out << "dt: " << format_csv_double(cfg.dt)
      << " t_final: " << format_csv_double(cfg.t_final)
      << " snapshots: " << result.rows.size() << "\n";
  for (const auto& c : result.checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name
        << ": observed=" << format_csv_double(c.observed)
        << " tol=" << format_csv_double(c.tolerance) << "\n";
  }
  out << "RESULT: " << (result.all_pass() ? "PASS" : "FAIL") << "\n";
}

struct SnapshotData {
  WaveField phi;
  WaveField psi;
  DiagnosticsRow row;
};

// Fine grid hugging the transported support, used for the interaction-picture
// moments. The analytic psi deserves a quadrature-quality spacing, which the
// phi grid cannot always afford once it is sized for ballistic tail flight.
Grid psi_measurement_grid(const Scenario& s, const ScenarioSolution& ss,
                          double t_final) {
  const double width = s.beta - s.alpha;
  double lo = 0.0;
  double hi = 0.0;
  const int samples = 256;
  for (int i = 0; i <= samples; ++i) {
    const double shift = ss.sol.displacement(t_final * i / samples);
    lo = std::min(lo, shift);
    hi = std::max(hi, shift);
  }
  const double x_lo = s.alpha + lo - 2.0 * width;
  const double x_hi = s.beta + hi + 2.0 * width;
  // Narrow bumps need enough samples across the support; wide ones have
  // slower-decaying momentum tails and need finer absolute spacing.
  const double target_h = 0.014 * std::min(width / 2.0, 2.0 / width);
  int n = 256;
  while (n < 65536 && (x_hi - x_lo) / n > target_h) n *= 2;
  return make_grid(x_lo, x_hi, n);
}

std::vector<SnapshotData> compute_snapshots(const ScenarioConfig& cfg,
                                            const Grid& grid,
                                            bool with_fidelity) {
  const Scenario& s = cfg.scenario;
  const ScenarioSolution ss = solve_scenario(s);
  const Trajectory traj = classical_trajectory(s, ss.bump.center(), 0.0,
                                               cfg.t_final, cfg.dt);
  const Grid psi_grid = psi_measurement_grid(s, ss, cfg.t_final);
  std::vector<WaveField> snaps =
      evolve(s, grid, cfg.t_final, cfg.dt, cfg.snapshot_every);
  const int threads = thread_cap();

  std::vector<SnapshotData> out;
  out.reserve(snaps.size());
  for (auto& phi : snaps) {
    const double t = phi.time;
    SnapshotData data{std::move(phi), sample_exact(grid, ss.sol, t, threads),
                      {}};
    const auto [lo, hi] = ss.sol.support(t);
    if (with_fidelity) {
      const WaveField phi_exact = free_evolve(data.psi, s.h0_kind(), t);
      data.row.phi = make_report(data.phi, lo, hi, &phi_exact);
    } else {
      data.row.phi = make_report(data.phi, lo, hi);
    }
    const WaveField psi_fine = sample_exact(psi_grid, ss.sol, t, threads);
    data.row.centroid_psi = centroid(psi_fine);
    data.row.variance_psi = variance(psi_fine);
    data.row.predicted_centroid = predicted_centroid(s, t);
    data.row.classical_x = traj.position_at(t);
    out.push_back(std::move(data));
  }
  return out;
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& cfg) {
  const Grid grid = grid_for(cfg);
  const auto dir = prepare_output_dir(cfg);
  const auto snapshots = compute_snapshots(cfg, grid, true);

  std::ofstream field_csv(dir / "field.csv");
  write_field_header(field_csv, true, true);
  for (const auto& snap : snapshots) {
    write_field_rows(field_csv, &snap.psi, &snap.phi, snap.row.phi.time);
  }

  std::ofstream diag_csv(dir / "diagnostics.csv");
  diag_csv << "t,norm,centroid_psi,variance_psi,centroid_phi,variance_phi,"
              "support_mass_outside,fidelity_vs_exact,predicted_centroid,"
              "classical_x\n";
  RunResult result;
  for (const auto& snap : snapshots) {
    const auto& r = snap.row;
    result.rows.push_back(r);
    diag_csv << format_csv_double(r.phi.time) << ','
             << format_csv_double(r.phi.norm) << ','
             << format_csv_double(r.centroid_psi) << ','
             << format_csv_double(r.variance_psi) << ','
             << format_csv_double(r.phi.centroid) << ','
             << format_csv_double(r.phi.variance) << ','
             << format_csv_double(r.phi.support_mass_outside) << ','
             << format_csv_double(r.phi.fidelity_vs_exact) << ','
             << format_csv_double(r.predicted_centroid) << ','
             << format_csv_double(r.classical_x) << "\n";
  }

  result.checks = build_checks(result.rows);
  write_summary(dir / "summary.txt", cfg, grid, result);
  return result;
}

void run_solve(const ScenarioConfig& cfg) {
  const Grid grid = grid_for(cfg);
  const auto dir = prepare_output_dir(cfg);
  const ScenarioSolution ss = solve_scenario(cfg.scenario);
  const int threads = thread_cap();

  std::ofstream field_csv(dir / "field.csv");
  write_field_header(field_csv, true, false);
  const long n_steps = std::lround(cfg.t_final / cfg.dt);
  for (long i = 0; i <= n_steps; ++i) {
    if (i != 0 && i != n_steps && i % cfg.snapshot_every != 0) continue;
    const double t = static_cast<double>(i) * cfg.dt;
    const WaveField psi = sample_exact(grid, ss.sol, t, threads);
    write_field_rows(field_csv, &psi, nullptr, t);
  }
}

void run_integrate(const ScenarioConfig& cfg) {
  const Grid grid = grid_for(cfg);
  const auto dir = prepare_output_dir(cfg);
  const auto snaps =
      evolve(cfg.scenario, grid, cfg.t_final, cfg.dt, cfg.snapshot_every);

  std::ofstream field_csv(dir / "field.csv");
  write_field_header(field_csv, false, true);
  for (const auto& phi : snaps) {
    write_field_rows(field_csv, nullptr, &phi, phi.time);
  }
}

void run_compare(const ScenarioConfig& cfg, std::ostream& out) {
  const Grid grid = grid_for(cfg);
  const auto snapshots = compute_snapshots(cfg, grid, false);

  out << "three-way centroid (scenario: " << to_string(cfg.scenario.kind)
      << ")\n";
  out << "        t        predicted       split-step        classical\n";
  char buf[128];
  for (const auto& snap : snapshots) {
    const auto& r = snap.row;
    std::snprintf(buf, sizeof(buf), "%9.4f %16.9f %16.9f %16.9f\n", r.phi.time,
                  r.predicted_centroid, r.phi.centroid, r.classical_x);
    out << buf;
  }
  out << "\nvariance by picture\n";
  out << "        t      interaction      schroedinger\n";
  for (const auto& snap : snapshots) {
    const auto& r = snap.row;
    std::snprintf(buf, sizeof(buf), "%9.4f %16.12f %16.12f\n", r.phi.time,
                  r.variance_psi, r.phi.variance);
    out << buf;
  }
}

}  // namespace iplab
