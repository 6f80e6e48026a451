#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "iplab/exact_solver.hpp"
#include "iplab/operator_algebra.hpp"

namespace iplab {

/// The four preset problems. Free H0 with a momentum or position coupling,
/// and oscillator H0 with the same two couplings.
enum class ScenarioKind {
  FreeKick,          // H0 free,       H_int = -i lambda theta(t) d
  ConstantField,     // H0 free,       H_int =  lambda theta(t) x
  DrivenOscillator,  // H0 oscillator, H_int =  lambda theta(t) x
  KickedOscillator,  // H0 oscillator, H_int = -i lambda theta(t) d
};

enum class H0Kind { Free, Oscillator };

struct Scenario {
  ScenarioKind kind = ScenarioKind::FreeKick;
  double lambda = 1.0;
  SwitchingProfile theta = SwitchingProfile::heaviside();
  double alpha = -1.0;  // bump support
  double beta = 1.0;

  H0Kind h0_kind() const;
  /// True when H_int is proportional to the momentum operator.
  bool momentum_coupling() const;
  DiffOperator h0() const;
  DiffOperator spatial() const;  // x or -i d
  ScaledPerturbation perturbation() const;
};

Scenario make_scenario(ScenarioKind kind, double lambda = 1.0,
                       SwitchingProfile theta = SwitchingProfile::heaviside(),
                       double alpha = -1.0, double beta = 1.0);

std::string to_string(ScenarioKind kind);
std::optional<ScenarioKind> scenario_from_string(std::string_view name);

/// Normalized bump, summed effective Hamiltonian, and exact solution for a
/// scenario, bundled for the consumers that need all three.
struct ScenarioSolution {
  BumpFunction bump;
  EffectiveHamiltonian eff;
  ExactSolution sol;
};

ScenarioSolution solve_scenario(const Scenario& scenario);

}  // namespace iplab
