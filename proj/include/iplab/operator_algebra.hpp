#pragma once

#include <complex>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "iplab/errors.hpp"
#include "iplab/special_functions.hpp"
#include "iplab/trig_poly.hpp"

namespace iplab {

using Complex = std::complex<double>;

/// Monomial x^m d^n in normal order (all x powers left of all derivatives).
struct Monomial {
  int x_pow = 0;
  int d_pow = 0;
  auto operator<=>(const Monomial&) const = default;
};

/// Finite sum of terms coeff * x^m d^n kept in canonical normal-ordered form:
/// no stored zero coefficients, so equality of operators is equality of the
/// term maps.
class DiffOperator {
 public:
  DiffOperator() = default;

  static DiffOperator zero() { return DiffOperator{}; }
  static DiffOperator identity(Complex c = 1.0) { return monomial(c, 0, 0); }
  static DiffOperator x(Complex c = 1.0) { return monomial(c, 1, 0); }
  static DiffOperator d(Complex c = 1.0) { return monomial(c, 0, 1); }
  static DiffOperator monomial(Complex c, int x_pow, int d_pow);

  /// H0 = -(1/2) d^2.
  static DiffOperator free_hamiltonian();
  /// H0 = -(1/2) d^2 + (1/2) x^2.
  static DiffOperator oscillator_hamiltonian();
  /// Momentum operator -i d.
  static DiffOperator momentum();

  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Complex>& terms() const { return terms_; }
  Complex coeff(int x_pow, int d_pow) const;
  double norm_inf() const;
  int max_x_power() const;
  int max_d_power() const;

  DiffOperator& operator+=(const DiffOperator& o);
  DiffOperator& operator-=(const DiffOperator& o);
  DiffOperator operator+(const DiffOperator& o) const;
  DiffOperator operator-(const DiffOperator& o) const;
  DiffOperator operator-() const;
  DiffOperator operator*(const DiffOperator& o) const;  // operator product
  DiffOperator scaled(Complex s) const;

  bool operator==(const DiffOperator&) const = default;

  /// Copy with coefficients of magnitude <= tol removed.
  DiffOperator chopped(double tol) const;

  std::string to_string() const;

 private:
  void accumulate(Monomial m, Complex c);
  std::map<Monomial, Complex> terms_;
};

inline DiffOperator operator*(Complex s, const DiffOperator& a) {
  return a.scaled(s);
}

/// Canonical form of AB - BA, by exact normal ordering of the products.
DiffOperator commutator(const DiffOperator& a, const DiffOperator& b);

inline constexpr int kDefaultAdOrderCap = 32;

/// n-fold nested commutator ad^n H0 (a): ad^0 = a, ad^n = [h0, ad^(n-1)].
/// Throws OrderCapError for n > max_order.
DiffOperator ad_power(const DiffOperator& h0, const DiffOperator& a, int n,
                      int max_order = kDefaultAdOrderCap);

/// Thrown when the adjoint series neither terminates nor closes within the
/// order cap; carries the adjoint powers computed so far.
class NoClosedFormError : public Error {
 public:
  NoClosedFormError(const std::string& what, std::vector<DiffOperator> powers)
      : Error(what), powers_(std::move(powers)) {}
  const std::vector<DiffOperator>& truncated_powers() const { return powers_; }

 private:
  std::vector<DiffOperator> powers_;
};

/// Perturbation lambda * theta(t) * spatial with the time dependence kept
/// factored out of the operator algebra.
struct ScaledPerturbation {
  DiffOperator spatial;
  double strength = 1.0;
  SwitchingProfile profile = SwitchingProfile::heaviside();
};

/// Validates that the spatial part is at most first order in x and in d.
ScaledPerturbation make_perturbation(DiffOperator spatial, double strength,
                                     SwitchingProfile profile);

/// Detected structure of the adjoint-power sequence a_n = ad^n h0 (a).
/// Either the sequence hits zero (terminated) or some a_K equals
/// ratio * a_J for J < K, after which a_(n+period) = ratio * a_n for all
/// n >= repeat_start.
struct AdResummation {
  std::vector<DiffOperator> powers;  // a_0 .. a_(K-1)
  bool terminated = false;
  int repeat_start = 0;  // J
  int period = 0;        // K - J
  Complex ratio{};       // mu
};

/// Computes adjoint powers until termination or closure is detected.
/// Throws NoClosedFormError when neither happens within max_order.
AdResummation resum_ad_series(const DiffOperator& h0, const DiffOperator& a,
                              int max_order = kDefaultAdOrderCap,
                              double tol = 1e-12);

/// Numeric value at time t of the resummed series
/// sum_n (it)^n / n! * a_n, as an operator with complex coefficients.
DiffOperator resummed_operator(const AdResummation& r, double t);

/// Truncated-series evaluator for one monomial's coefficient; used when the
/// detected closure does not match a tabulated closed form. phase multiplies
/// the complex series; the value must come out real.
class AdSeriesFn {
 public:
  AdSeriesFn(std::vector<Complex> coeffs, bool terminated, int repeat_start,
             int period, Complex ratio, Complex phase);
  double value(double t) const;  // throws Error if the value is not real

 private:
  std::vector<Complex> coeffs_;
  bool terminated_;
  int repeat_start_;
  int period_;
  Complex ratio_;
  Complex phase_;
};

/// Scalar function of time: a closed form (polynomial and unit-frequency trig
/// terms) or a truncated-series evaluator.
class TimeFunction {
 public:
  TimeFunction() : impl_(TrigPoly::zero()) {}
  explicit TimeFunction(TrigPoly p) : impl_(std::move(p)) {}
  explicit TimeFunction(AdSeriesFn s) : impl_(std::move(s)) {}

  bool is_closed_form() const {
    return std::holds_alternative<TrigPoly>(impl_);
  }
  const TrigPoly* closed_form() const {
    return std::get_if<TrigPoly>(&impl_);
  }
  double value(double t) const;

 private:
  std::variant<TrigPoly, AdSeriesFn> impl_;
};

/// One coefficient of the effective Hamiltonian:
/// value(t) = strength * theta(t) * bare(t).
struct CoefficientFunction {
  double strength = 0.0;
  SwitchingProfile profile = SwitchingProfile::heaviside();
  TimeFunction bare;

  double bare_value(double t) const { return bare.value(t); }
  double value(double t) const {
    return strength * profile.value(t) * bare.value(t);
  }
  bool is_closed_form() const { return bare.is_closed_form(); }
};

/// Closed form of e^(itH0) H_int e^(-itH0) as the first-order operator
/// A(t) x - i B(t) d + C(t) with real coefficient functions.
struct EffectiveHamiltonian {
  CoefficientFunction coeff_x;  // A
  CoefficientFunction coeff_d;  // B, enters the operator as -i B d
  CoefficientFunction coeff_1;  // C
  DiffOperator h0;
  ScaledPerturbation source;

  /// Numeric operator A(t) x - i B(t) d + C(t) at time t.
  DiffOperator operator_at(double t) const;
};

/// Sums the adjoint series for the perturbation into closed form. Detects
/// termination (polynomial coefficients) or closure (a power proportional to
/// an earlier one; trigonometric coefficients). Throws NoClosedFormError if
/// neither happens within max_order, or if the summed operator is not first
/// order.
EffectiveHamiltonian effective_hamiltonian(const DiffOperator& h0,
                                           const ScaledPerturbation& hint,
                                           int max_order = kDefaultAdOrderCap,
                                           double tol = 1e-12);

/// Heisenberg map e^(itH0) obs e^(-itH0) at time t, via the same series.
DiffOperator heisenberg_map(const DiffOperator& h0, const DiffOperator& obs,
                            double t, int max_order = kDefaultAdOrderCap,
                            double tol = 1e-12);

/// Literal truncated series H_int + sum_{n=1}^{n_terms-1} (it)^n/n! ad^n,
/// evaluated numerically with theta taken at time t.
DiffOperator series_partial_sum(const DiffOperator& h0,
                                const ScaledPerturbation& hint, double t,
                                int n_terms);

}  // namespace iplab
