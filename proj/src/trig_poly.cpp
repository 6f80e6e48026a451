#include "iplab/trig_poly.hpp"

#include <cmath>
#include <sstream>
#include <tuple>

namespace iplab {

bool TrigPoly::Key::operator<(const Key& o) const {
  return std::tie(omega, wave, tpow) < std::tie(o.omega, o.wave, o.tpow);
}

TrigPoly TrigPoly::constant(double c) {
  TrigPoly p;
  p.add_term(c, 0, 0.0, Wave::None);
  return p;
}

TrigPoly TrigPoly::monomial(double c, int tpow) {
  TrigPoly p;
  p.add_term(c, tpow, 0.0, Wave::None);
  return p;
}

TrigPoly TrigPoly::harmonic(double cos_amp, double sin_amp, double omega) {
  TrigPoly p;
  p.add_term(cos_amp, 0, omega, Wave::Cos);
  p.add_term(sin_amp, 0, omega, Wave::Sin);
  return p;
}

TrigPoly& TrigPoly::add_term(double coeff, int tpow, double omega, Wave wave) {
  if (coeff == 0.0) return *this;
  // Normalize: frequency zero degenerates to a polynomial term.
  if (omega == 0.0 || wave == Wave::None) {
    if (wave == Wave::Sin && omega == 0.0) return *this;  // sin(0) == 0
    omega = 0.0;
    wave = Wave::None;
  } else if (omega < 0.0) {
    omega = -omega;
    if (wave == Wave::Sin) coeff = -coeff;
  }
  const Key key{tpow, omega, wave};
  auto [it, inserted] = terms_.emplace(key, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
  return *this;
}

double TrigPoly::value(double t) const {
  double sum = 0.0;
  for (const auto& [key, c] : terms_) {
    double term = c;
    for (int i = 0; i < key.tpow; ++i) term *= t;
    switch (key.wave) {
      case Wave::None:
        break;
      case Wave::Cos:
        term *= std::cos(key.omega * t);
        break;
      case Wave::Sin:
        term *= std::sin(key.omega * t);
        break;
    }
    sum += term;
  }
  return sum;
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
  TrigPoly r = *this;
  for (const auto& [key, c] : o.terms_) r.add_term(c, key.tpow, key.omega, key.wave);
  return r;
}

TrigPoly TrigPoly::operator-(const TrigPoly& o) const {
  TrigPoly r = *this;
  for (const auto& [key, c] : o.terms_) r.add_term(-c, key.tpow, key.omega, key.wave);
  return r;
}

TrigPoly TrigPoly::scaled(double s) const {
  TrigPoly r;
  for (const auto& [key, c] : terms_) r.add_term(s * c, key.tpow, key.omega, key.wave);
  return r;
}

TrigPoly TrigPoly::operator*(const TrigPoly& o) const {
  TrigPoly r;
  for (const auto& [ka, ca] : terms_) {
    for (const auto& [kb, cb] : o.terms_) {
      const double c = ca * cb;
      const int tp = ka.tpow + kb.tpow;
      if (ka.wave == Wave::None) {
        r.add_term(c, tp, kb.omega, kb.wave);
      } else if (kb.wave == Wave::None) {
        r.add_term(c, tp, ka.omega, ka.wave);
      } else {
        const double wm = ka.omega - kb.omega;
        const double wp = ka.omega + kb.omega;
        if (ka.wave == Wave::Cos && kb.wave == Wave::Cos) {
          r.add_term(0.5 * c, tp, wm, Wave::Cos);
          r.add_term(0.5 * c, tp, wp, Wave::Cos);
        } else if (ka.wave == Wave::Sin && kb.wave == Wave::Sin) {
          r.add_term(0.5 * c, tp, wm, Wave::Cos);
          r.add_term(-0.5 * c, tp, wp, Wave::Cos);
        } else if (ka.wave == Wave::Sin && kb.wave == Wave::Cos) {
          r.add_term(0.5 * c, tp, wm, Wave::Sin);
          r.add_term(0.5 * c, tp, wp, Wave::Sin);
        } else {  // cos * sin
          r.add_term(-0.5 * c, tp, wm, Wave::Sin);
          r.add_term(0.5 * c, tp, wp, Wave::Sin);
        }
      }
    }
  }
  return r;
}

namespace {

// Antiderivative of a single term, by parts for t^k trig factors.
void integrate_term(TrigPoly& out, double c, int k, double w,
                    TrigPoly::Wave wave) {
  using Wave = TrigPoly::Wave;
  if (wave == Wave::None) {
    out.add_term(c / static_cast<double>(k + 1), k + 1, 0.0, Wave::None);
    return;
  }
  if (wave == Wave::Cos) {
    // int t^k cos(wt) = t^k sin(wt)/w - (k/w) int t^(k-1) sin(wt)
    out.add_term(c / w, k, w, Wave::Sin);
    if (k > 0) integrate_term(out, -c * k / w, k - 1, w, Wave::Sin);
  } else {
    // int t^k sin(wt) = -t^k cos(wt)/w + (k/w) int t^(k-1) cos(wt)
    out.add_term(-c / w, k, w, Wave::Cos);
    if (k > 0) integrate_term(out, c * k / w, k - 1, w, Wave::Cos);
  }
}

}  // namespace

TrigPoly TrigPoly::antiderivative() const {
  TrigPoly out;
  for (const auto& [key, c] : terms_) {
    integrate_term(out, c, key.tpow, key.omega, key.wave);
  }
  return out;
}

double TrigPoly::integral_from_zero(double t) const {
  const TrigPoly f = antiderivative();
  return f.value(t) - f.value(0.0);
}

std::string TrigPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    if (key.tpow > 0) os << "*t^" << key.tpow;
    if (key.wave == Wave::Cos) os << "*cos(" << key.omega << "t)";
    if (key.wave == Wave::Sin) os << "*sin(" << key.omega << "t)";
  }
  return os.str();
}

}  // namespace iplab
