#pragma once

#include <complex>
#include <vector>

#include "iplab/scenarios.hpp"

namespace iplab {

inline constexpr int kDefaultGridPoints = 2048;
inline constexpr double kDefaultTimeStep = 1e-3;
inline constexpr double kDefaultMarginWidths = 4.0;

/// Uniform periodic grid on [x_min, x_max) with a power-of-two point count.
struct Grid {
  double x_min = -10.0;
  double x_max = 10.0;
  int n_points = kDefaultGridPoints;

  double length() const { return x_max - x_min; }
  double spacing() const { return length() / n_points; }
  double x(int j) const { return x_min + j * spacing(); }
  /// Momentum lattice in the standard discrete-Fourier ordering.
  double wavenumber(int j) const;

  bool operator==(const Grid&) const = default;
};

/// Validates bounds and the power-of-two rule (n_points >= 256).
Grid make_grid(double x_min, double x_max, int n_points);

/// Domain sized from the exact displacement over [0, t_final] plus a margin
/// of margin_widths bump widths on each side.
Grid auto_grid(const Scenario& scenario, double t_final,
               int n_points = kDefaultGridPoints,
               double margin_widths = kDefaultMarginWidths);

/// Complex samples of a wavefunction on a grid at one instant.
struct WaveField {
  Grid grid;
  std::vector<std::complex<double>> values;
  double time = 0.0;
};

/// Samples of the normalized bump at t = 0. The support must lie strictly
/// inside the grid domain.
WaveField initialize(const Grid& grid, const BumpFunction& bump);

/// Samples of the exact interaction-picture solution at time t.
/// n_threads > 1 parallelizes over grid points (result is identical).
WaveField sample_exact(const Grid& grid, const ExactSolution& sol, double t,
                       int n_threads = 1);

/// One Strang-split step of the full equation i dphi/dt = (H0 + H_int) phi:
/// half multiplication step, full Fourier-diagonal step, half multiplication
/// step, with theta evaluated at the step midpoint. Negative dt steps
/// backwards (used for time-reversal checks).
void step(WaveField& field, const Scenario& scenario, double dt);

/// Integrates from the scenario's bump at t = 0 and returns snapshots every
/// snapshot_every steps (the initial and final fields included).
std::vector<WaveField> evolve(const Scenario& scenario, const Grid& grid,
                              double t_final, double dt, int snapshot_every);

/// Advances an existing field to t_target with steps of size about dt_hint.
void advance_to(WaveField& field, const Scenario& scenario, double t_target,
                double dt_hint = kDefaultTimeStep);

/// Applies the free propagator e^(-i t H0): one Fourier-diagonal
/// multiplication for free H0, composed split steps for the oscillator.
/// The field's time stamp is left unchanged (this is a change of picture,
/// not an advance in time).
WaveField free_evolve(const WaveField& field, H0Kind h0_kind, double t,
                      double dt_substep = kDefaultTimeStep);

}  // namespace iplab
