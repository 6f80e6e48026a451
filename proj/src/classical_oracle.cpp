#include "iplab/classical_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace iplab {

namespace {

struct Derivs {
  double dx;
  double dp;
};

Derivs rhs(const Scenario& s, double t, double x, double p) {
  const double coupling = s.lambda * s.theta.value(t);
  Derivs d;
  d.dx = p + (s.momentum_coupling() ? coupling : 0.0);
  d.dp = -(s.h0_kind() == H0Kind::Oscillator ? x : 0.0) -
         (s.momentum_coupling() ? 0.0 : coupling);
  return d;
}

}  // namespace

double Trajectory::position_at(double t) const {
  if (samples.empty()) throw std::invalid_argument("empty trajectory");
  if (samples.size() == 1) return samples.front().x;
  const double dt = samples[1].t - samples[0].t;
  const double u = (t - samples.front().t) / dt;
  if (u <= 0.0) return samples.front().x;
  const auto lo = std::min(static_cast<std::size_t>(u), samples.size() - 2);
  const double w = u - static_cast<double>(lo);
  return samples[lo].x + w * (samples[lo + 1].x - samples[lo].x);
}

namespace {

void rk4_step(const Scenario& s, double t, double dt, double& x, double& p) {
  const Derivs k1 = rhs(s, t, x, p);
  const Derivs k2 =
      rhs(s, t + 0.5 * dt, x + 0.5 * dt * k1.dx, p + 0.5 * dt * k1.dp);
  const Derivs k3 =
      rhs(s, t + 0.5 * dt, x + 0.5 * dt * k2.dx, p + 0.5 * dt * k2.dp);
  const Derivs k4 = rhs(s, t + dt, x + dt * k3.dx, p + dt * k3.dp);
  x += dt / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
  p += dt / 6.0 * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp);
}

}  // namespace

Trajectory classical_trajectory(const Scenario& scenario, double x0, double v0,
                                double t_final, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("trajectory requires dt > 0");
  const long n = std::max(0L, std::lround(t_final / dt));
  Trajectory traj;
  traj.samples.reserve(static_cast<std::size_t>(n) + 1);
  double x = x0;
  double p = v0;
  traj.samples.push_back({0.0, x, rhs(scenario, 0.0, x, p).dx});
  for (long i = 0; i < n; ++i) {
    rk4_step(scenario, static_cast<double>(i) * dt, dt, x, p);
    const double tn = static_cast<double>(i + 1) * dt;
    traj.samples.push_back({tn, x, rhs(scenario, tn, x, p).dx});
  }
  return traj;
}

double rk4_position(const Scenario& scenario, double x0, double v0, double t,
                    double dt_hint) {
  if (!(dt_hint > 0.0)) throw std::invalid_argument("rk4 requires dt > 0");
  if (t <= 0.0) return x0;
  const long n = std::max(1L, std::lround(std::ceil(t / dt_hint)));
  const double dt = t / static_cast<double>(n);
  double x = x0;
  double p = v0;
  for (long i = 0; i < n; ++i) {
    rk4_step(scenario, static_cast<double>(i) * dt, dt, x, p);
  }
  return x;
}

double closed_form_position(const Scenario& scenario, double t, double x0,
                            double v0) {
  const double lam = scenario.lambda;
  switch (scenario.theta.kind()) {
    case ProfileKind::Heaviside: {
      if (t < 0.0) return x0 + v0 * t;
      switch (scenario.kind) {
        case ScenarioKind::FreeKick:
          return x0 + (v0 + lam) * t;
        case ScenarioKind::ConstantField:
          return x0 + v0 * t - 0.5 * lam * t * t;
        case ScenarioKind::DrivenOscillator:
          return -lam + (x0 + lam) * std::cos(t) + v0 * std::sin(t);
        case ScenarioKind::KickedOscillator:
          return x0 * std::cos(t) + (v0 + lam) * std::sin(t);
      }
      break;
    }
    case ProfileKind::Ramp: {
      if (t < 0.0) return x0 + v0 * t;
      const double a = lam * scenario.theta.rate();
      switch (scenario.kind) {
        case ScenarioKind::FreeKick:
          return x0 + v0 * t + 0.5 * a * t * t;
        case ScenarioKind::ConstantField:
          return x0 + v0 * t - a * t * t * t / 6.0;
        case ScenarioKind::DrivenOscillator:
          return x0 * std::cos(t) + (v0 + a) * std::sin(t) - a * t;
        case ScenarioKind::KickedOscillator:
          return a + (x0 - a) * std::cos(t) + v0 * std::sin(t);
      }
      break;
    }
    case ProfileKind::Table:
      throw NoClosedFormError(
          "no closed-form trajectory for table switching profiles", {});
  }
  return x0;
}

}  // namespace iplab
