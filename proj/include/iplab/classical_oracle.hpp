#pragma once

#include <vector>

#include "iplab/scenarios.hpp"

namespace iplab {

struct TrajectorySample {
  double t;
  double x;
  double v;
};

/// Classical trajectory sampled at uniform dt; the first sample is the
/// initial condition (with the switch-on already applied at t = 0).
struct Trajectory {
  std::vector<TrajectorySample> samples;

  double position_at(double t) const;  // linear interpolation between samples
};

/// RK4 integration of the canonical equations matching the scenario:
/// xdot = p + lambda theta(t) for momentum couplings, pdot = -x for the
/// oscillator and pdot = -lambda theta(t) for position couplings. For a
/// heaviside switch this reproduces the velocity jump lambda at t = 0.
Trajectory classical_trajectory(const Scenario& scenario, double x0, double v0,
                                double t_final, double dt);

/// RK4 position at exactly time t, with the step count chosen so that the
/// steps divide t (step size about dt_hint).
double rk4_position(const Scenario& scenario, double x0, double v0, double t,
                    double dt_hint = 1e-3);

/// Analytic trajectory for heaviside and ramp profiles; throws
/// NoClosedFormError for table profiles.
double closed_form_position(const Scenario& scenario, double t,
                            double x0 = 0.0, double v0 = 0.0);

}  // namespace iplab
