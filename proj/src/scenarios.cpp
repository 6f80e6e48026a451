#include "iplab/scenarios.hpp"

namespace iplab {

H0Kind Scenario::h0_kind() const {
  switch (kind) {
    case ScenarioKind::FreeKick:
    case ScenarioKind::ConstantField:
      return H0Kind::Free;
    case ScenarioKind::DrivenOscillator:
    case ScenarioKind::KickedOscillator:
      return H0Kind::Oscillator;
  }
  return H0Kind::Free;
}

bool Scenario::momentum_coupling() const {
  return kind == ScenarioKind::FreeKick ||
         kind == ScenarioKind::KickedOscillator;
}

DiffOperator Scenario::h0() const {
  return h0_kind() == H0Kind::Free ? DiffOperator::free_hamiltonian()
                                   : DiffOperator::oscillator_hamiltonian();
}

DiffOperator Scenario::spatial() const {
  return momentum_coupling() ? DiffOperator::momentum() : DiffOperator::x();
}

ScaledPerturbation Scenario::perturbation() const {
  return make_perturbation(spatial(), lambda, theta);
}

Scenario make_scenario(ScenarioKind kind, double lambda,
                       SwitchingProfile theta, double alpha, double beta) {
  if (!(alpha < beta)) {
    throw InvalidIntervalError("scenario bump requires alpha < beta");
  }
  return Scenario{kind, lambda, std::move(theta), alpha, beta};
}

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::FreeKick:
      return "free-kick";
    case ScenarioKind::ConstantField:
      return "constant-field";
    case ScenarioKind::DrivenOscillator:
      return "driven-oscillator";
    case ScenarioKind::KickedOscillator:
      return "kicked-oscillator";
  }
  return "unknown";
}

std::optional<ScenarioKind> scenario_from_string(std::string_view name) {
  if (name == "free-kick") return ScenarioKind::FreeKick;
  if (name == "constant-field") return ScenarioKind::ConstantField;
  if (name == "driven-oscillator") return ScenarioKind::DrivenOscillator;
  if (name == "kicked-oscillator") return ScenarioKind::KickedOscillator;
  return std::nullopt;
}

ScenarioSolution solve_scenario(const Scenario& scenario) {
  ScenarioSolution s{kelly_normalize(scenario.alpha, scenario.beta),
                     effective_hamiltonian(scenario.h0(),
                                           scenario.perturbation()),
                     ExactSolution{}};
  s.sol = solve(s.eff, s.bump);
  return s;
}

}  // namespace iplab
