#pragma once

#include <complex>
#include <optional>
#include <utility>

#include "iplab/operator_algebra.hpp"
#include "iplab/quadrature.hpp"

namespace iplab {

/// Interaction-picture solution of i d/dt psi = [A(t) x - i B(t) d + C(t)] psi
/// with initial condition psi(0, x) = k(x):
///
///   psi(t, x) = k(x - X(t)) * exp{ i [ -x P(t) + gamma(t) ] }
///
/// where X = int_0^t B, P = int_0^t A, gamma = int_0^t (B P - C).
/// The modulus is the initial bump rigidly transported by X(t).
class ExactSolution {
 public:
  const BumpFunction& bump() const { return bump_; }
  const EffectiveHamiltonian& effective() const { return eff_; }

  /// X(t). Closed form when the coefficients admit one, else quadrature.
  double displacement(double t) const;
  /// P(t).
  double momentum_phase(double t) const;
  /// gamma(t).
  double global_phase(double t) const;

  /// Independent adaptive-quadrature routes for the same three integrals.
  double displacement_quadrature(double t) const;
  double momentum_phase_quadrature(double t) const;
  double global_phase_quadrature(double t) const;

  std::complex<double> psi(double t, double x) const;

  /// Transported support (alpha + X, beta + X); psi vanishes exactly outside.
  std::pair<double, double> support(double t) const;

  bool has_closed_form() const {
    return x_int_.has_value() && p_int_.has_value() && g_int_.has_value();
  }

  /// X, P, gamma frozen at one time, for cheap evaluation over many x.
  struct Snapshot {
    double t;
    double shift;
    double p;
    double phase0;
    BumpFunction bump;
    std::complex<double> psi(double x) const;
  };
  Snapshot snapshot(double t) const;

 private:
  friend ExactSolution solve(const EffectiveHamiltonian& eff,
                             const BumpFunction& bump);
  BumpFunction bump_{-1.0, 1.0, 1.0};
  EffectiveHamiltonian eff_;
  // Antiderivatives of theta-weighted coefficients, valid for t >= 0.
  std::optional<TrigPoly> x_int_;
  std::optional<TrigPoly> p_int_;
  std::optional<TrigPoly> g_int_;
};

/// Solves the effective equation by characteristics plus phase substitution.
ExactSolution solve(const EffectiveHamiltonian& eff, const BumpFunction& bump);

inline std::complex<double> evaluate_psi(const ExactSolution& sol, double t,
                                         double x) {
  return sol.psi(t, x);
}

/// |i dpsi/dt - (A x psi - i B dpsi/dx + C psi)| with central differences of
/// step h. Second order in h at interior points; exactly zero where psi and
/// its neighborhood vanish.
double pde_residual(const ExactSolution& sol, const EffectiveHamiltonian& eff,
                    double t, double x, double h);

}  // namespace iplab
