#pragma once

#include <utility>
#include <vector>

#include "iplab/errors.hpp"

namespace iplab {

/// Switching step: 0 for t < 0, 1 for t >= 0.
double heaviside(double t);

/// Smooth bump norm_const * exp[-1/((x-alpha)(beta-x))] on (alpha, beta),
/// identically zero outside. Infinitely differentiable with compact support.
struct BumpFunction {
  double alpha;       ///< left endpoint of the support
  double beta;        ///< right endpoint of the support
  double norm_const;  ///< multiplicative prefactor

  double width() const { return beta - alpha; }
  double center() const { return 0.5 * (alpha + beta); }
};

/// Validates alpha < beta. Throws InvalidIntervalError otherwise.
BumpFunction make_bump(double alpha, double beta, double norm_const = 1.0);

/// Bump with norm_const chosen so that the L2 norm is one:
/// integral of K^2 over the support equals 1 (within 1e-10).
BumpFunction kelly_normalize(double alpha, double beta);

/// Value of the bump at x. Exactly zero for x <= alpha and x >= beta.
double kelly_eval(const BumpFunction& bump, double x);

inline constexpr int kDefaultDerivativeCap = 8;

/// n-th derivative of the bump, computed through the exact rational-prefactor
/// recurrence K^(n) = (N_n / u^(2n)) K with u = (x-alpha)(beta-x) and N_n
/// built by symbolic differentiation. Exactly zero outside (alpha, beta) for
/// every order. Throws UnsupportedOrderError for order < 0 or order > cap.
double kelly_derivative(const BumpFunction& bump, int order, double x,
                        int order_cap = kDefaultDerivativeCap);

enum class ProfileKind { Heaviside, Ramp, Table };

/// Weight w(tau) in the profile integral: one of 1, tau, sin tau, cos tau.
enum class ProfileWeight { One, Tau, SinTau, CosTau };

/// Time profile theta(t) of the perturbation switch-on. All kinds vanish for
/// t < 0. Heaviside jumps to 1 at t = 0; ramp is rate*t; table interpolates
/// linearly between samples (clamped to the end values outside their range).
class SwitchingProfile {
 public:
  static SwitchingProfile heaviside();
  static SwitchingProfile ramp(double rate);
  /// Samples must be strictly increasing in t with the first time >= 0.
  static SwitchingProfile table(std::vector<std::pair<double, double>> samples);

  ProfileKind kind() const { return kind_; }
  double rate() const { return rate_; }
  const std::vector<std::pair<double, double>>& samples() const {
    return samples_;
  }

  double value(double t) const;
  double operator()(double t) const { return value(t); }

  /// Sample times strictly inside (t0, t1); empty for heaviside and ramp.
  std::vector<double> breakpoints(double t0, double t1) const;

 private:
  SwitchingProfile() = default;
  ProfileKind kind_ = ProfileKind::Heaviside;
  double rate_ = 0.0;
  std::vector<std::pair<double, double>> samples_;
};

/// Integral of theta(tau) * w(tau) over [0, t]. Closed form for heaviside and
/// ramp profiles; exact per-segment closed forms for table profiles.
/// Requires t >= 0.
double profile_integral(const SwitchingProfile& profile, ProfileWeight weight,
                        double t);

}  // namespace iplab
