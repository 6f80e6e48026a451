#include "iplab/exact_solver.hpp"

#include <cmath>
#include <stdexcept>

namespace iplab {

namespace {

void require_nonnegative_time(double t) {
  if (t < 0.0) throw std::invalid_argument("solution time must be >= 0");
}

// theta(t) as a closed form, valid on t >= 0.
std::optional<TrigPoly> profile_symbol(const SwitchingProfile& profile) {
  switch (profile.kind()) {
    case ProfileKind::Heaviside:
      return TrigPoly::constant(1.0);
    case ProfileKind::Ramp:
      return TrigPoly::monomial(profile.rate(), 1);
    case ProfileKind::Table:
      return std::nullopt;
  }
  return std::nullopt;
}

// strength * theta(t) * bare(t) as a closed form, when all parts admit one.
std::optional<TrigPoly> coefficient_symbol(const CoefficientFunction& coeff) {
  const TrigPoly* bare = coeff.bare.closed_form();
  if (bare == nullptr) return std::nullopt;
  const auto theta = profile_symbol(coeff.profile);
  if (!theta) return std::nullopt;
  return (*theta * *bare).scaled(coeff.strength);
}

double integral_from_zero(const TrigPoly& antideriv, double t) {
  return antideriv.value(t) - antideriv.value(0.0);
}

}  // namespace

ExactSolution solve(const EffectiveHamiltonian& eff, const BumpFunction& bump) {
  ExactSolution sol;
  sol.bump_ = bump;
  sol.eff_ = eff;

  const auto a_sym = coefficient_symbol(eff.coeff_x);
  const auto b_sym = coefficient_symbol(eff.coeff_d);
  const auto c_sym = coefficient_symbol(eff.coeff_1);
  if (a_sym && b_sym && c_sym) {
    sol.x_int_ = b_sym->antiderivative();
    sol.p_int_ = a_sym->antiderivative();
    // P(tau) as a polynomial/trig expression with P(0) = 0.
    const TrigPoly p_of_tau =
        *sol.p_int_ + TrigPoly::constant(-sol.p_int_->value(0.0));
    const TrigPoly gamma_integrand = (*b_sym * p_of_tau) - *c_sym;
    sol.g_int_ = gamma_integrand.antiderivative();
  }
  return sol;
}

double ExactSolution::displacement(double t) const {
  require_nonnegative_time(t);
  if (x_int_) return integral_from_zero(*x_int_, t);
  return displacement_quadrature(t);
}

double ExactSolution::momentum_phase(double t) const {
  require_nonnegative_time(t);
  if (p_int_) return integral_from_zero(*p_int_, t);
  return momentum_phase_quadrature(t);
}

double ExactSolution::global_phase(double t) const {
  require_nonnegative_time(t);
  if (g_int_) return integral_from_zero(*g_int_, t);
  return global_phase_quadrature(t);
}

double ExactSolution::displacement_quadrature(double t) const {
  require_nonnegative_time(t);
  const auto& b = eff_.coeff_d;
  return adaptive_simpson_split([&b](double tau) { return b.value(tau); }, 0.0,
                                t, b.profile.breakpoints(0.0, t));
}

double ExactSolution::momentum_phase_quadrature(double t) const {
  require_nonnegative_time(t);
  const auto& a = eff_.coeff_x;
  return adaptive_simpson_split([&a](double tau) { return a.value(tau); }, 0.0,
                                t, a.profile.breakpoints(0.0, t));
}

double ExactSolution::global_phase_quadrature(double t) const {
  require_nonnegative_time(t);
  const auto& a = eff_.coeff_x;
  const auto& b = eff_.coeff_d;
  const auto& c = eff_.coeff_1;
  auto integrand = [&](double tau) {
    return b.value(tau) * momentum_phase(tau) - c.value(tau);
  };
  return adaptive_simpson_split(integrand, 0.0, t,
                                a.profile.breakpoints(0.0, t));
}

std::complex<double> ExactSolution::Snapshot::psi(double x) const {
  const double k = kelly_eval(bump, x - shift);
  if (k == 0.0) return {0.0, 0.0};
  return std::polar(k, -x * p + phase0);
}

ExactSolution::Snapshot ExactSolution::snapshot(double t) const {
  return Snapshot{t, displacement(t), momentum_phase(t), global_phase(t),
                  bump_};
}

std::complex<double> ExactSolution::psi(double t, double x) const {
  return snapshot(t).psi(x);
}

std::pair<double, double> ExactSolution::support(double t) const {
  const double shift = displacement(t);
  return {bump_.alpha + shift, bump_.beta + shift};
}

double pde_residual(const ExactSolution& sol, const EffectiveHamiltonian& eff,
                    double t, double x, double h) {
  if (h <= 0.0) throw std::invalid_argument("pde_residual requires h > 0");
  if (t - h < 0.0) {
    throw std::invalid_argument("pde_residual requires t - h >= 0");
  }
  const std::complex<double> i{0.0, 1.0};
  const std::complex<double> dpsi_dt =
      (sol.psi(t + h, x) - sol.psi(t - h, x)) / (2.0 * h);
  const std::complex<double> dpsi_dx =
      (sol.psi(t, x + h) - sol.psi(t, x - h)) / (2.0 * h);
  const std::complex<double> psi = sol.psi(t, x);
  const std::complex<double> rhs = eff.coeff_x.value(t) * x * psi -
                                   i * eff.coeff_d.value(t) * dpsi_dx +
                                   eff.coeff_1.value(t) * psi;
  return std::abs(i * dpsi_dt - rhs);
}

}  // namespace iplab
