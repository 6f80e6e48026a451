#pragma once

#include <map>
#include <string>

namespace iplab {

/// Finite sum of terms c * t^k, c * t^k * cos(w t), c * t^k * sin(w t).
/// Closed under addition, multiplication, and antidifferentiation, which is
/// exactly the algebra the resummed series coefficients and their transport
/// integrals live in.
class TrigPoly {
 public:
  enum class Wave { None, Cos, Sin };

  struct Key {
    int tpow;
    double omega;  // 0 iff wave == None
    Wave wave;
    bool operator<(const Key& o) const;
  };

  TrigPoly() = default;

  static TrigPoly zero() { return TrigPoly{}; }
  static TrigPoly constant(double c);
  static TrigPoly monomial(double c, int tpow);
  /// cos_amp * cos(w t) + sin_amp * sin(w t), w > 0.
  static TrigPoly harmonic(double cos_amp, double sin_amp, double omega);

  bool is_zero() const { return terms_.empty(); }
  const std::map<Key, double>& terms() const { return terms_; }

  double value(double t) const;

  TrigPoly& add_term(double coeff, int tpow, double omega, Wave wave);

  TrigPoly operator+(const TrigPoly& o) const;
  TrigPoly operator-(const TrigPoly& o) const;
  TrigPoly operator*(const TrigPoly& o) const;
  TrigPoly scaled(double s) const;

  /// An antiderivative (integration constant unspecified).
  TrigPoly antiderivative() const;

  /// Integral from 0 to t, i.e. F(t) - F(0) for F = antiderivative().
  double integral_from_zero(double t) const;

  std::string to_string() const;

 private:
  std::map<Key, double> terms_;
};

}  // namespace iplab
