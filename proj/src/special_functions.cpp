#include "iplab/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "iplab/quadrature.hpp"

namespace iplab {

double heaviside(double t) { return t < 0.0 ? 0.0 : 1.0; }

BumpFunction make_bump(double alpha, double beta, double norm_const) {
  if (!(alpha < beta)) {
    throw InvalidIntervalError("bump interval requires alpha < beta");
  }
  return BumpFunction{alpha, beta, norm_const};
}

double kelly_eval(const BumpFunction& bump, double x) {
  if (x <= bump.alpha || x >= bump.beta) return 0.0;
  const double u = (x - bump.alpha) * (bump.beta - x);
  return bump.norm_const * std::exp(-1.0 / u);
}

BumpFunction kelly_normalize(double alpha, double beta) {
  if (!(alpha < beta)) {
    throw InvalidIntervalError("bump interval requires alpha < beta");
  }
  // Integrate K^2 in the centered variable so that the result depends only on
  // the width; translated intervals then share the same constant exactly.
  const double half = 0.5 * (beta - alpha);
  auto k2 = [half](double s) {
    if (s <= -half || s >= half) return 0.0;
    const double u = (s + half) * (half - s);
    return std::exp(-2.0 / u);
  };
  const double l2 = adaptive_simpson(k2, -half, half, 1e-14);
  return BumpFunction{alpha, beta, 1.0 / std::sqrt(l2)};
}

namespace {

// Dense polynomial with real coefficients, ascending powers.
struct Poly {
  std::vector<double> c;

  double eval(double x) const {
    double r = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
  }
};

Poly derivative(const Poly& p) {
  Poly d;
  if (p.c.size() <= 1) return d;
  d.c.resize(p.c.size() - 1);
  for (std::size_t i = 1; i < p.c.size(); ++i) {
    d.c[i - 1] = static_cast<double>(i) * p.c[i];
  }
  return d;
}

Poly multiply(const Poly& a, const Poly& b) {
  Poly r;
  if (a.c.empty() || b.c.empty()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      r.c[i + j] += a.c[i] * b.c[j];
    }
  }
  return r;
}

Poly add_scaled(const Poly& a, const Poly& b, double s) {
  Poly r = a;
  if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), 0.0);
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += s * b.c[i];
  return r;
}

// Prefactor numerators N_n with K^(n) = N_n / u^(2n) * K, built from the
// recurrence N_{n+1} = u * (N_n' u - 2n N_n u') + N_n u'.
std::vector<Poly> prefactor_numerators(double alpha, double beta, int order) {
  const Poly u{{-alpha * beta, alpha + beta, -1.0}};
  const Poly du{{alpha + beta, -2.0}};
  std::vector<Poly> n(static_cast<std::size_t>(order) + 1);
  n[0] = Poly{{1.0}};
  for (int k = 0; k < order; ++k) {
    const Poly inner =
        add_scaled(multiply(derivative(n[k]), u), multiply(n[k], du),
                   -2.0 * static_cast<double>(k));
    n[k + 1] = add_scaled(multiply(u, inner), multiply(n[k], du), 1.0);
  }
  return n;
}

double int_pow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace

double kelly_derivative(const BumpFunction& bump, int order, double x,
                        int order_cap) {
  if (order < 0 || order > order_cap) {
    throw UnsupportedOrderError("kelly_derivative: order " +
                                std::to_string(order) +
                                " outside [0, " + std::to_string(order_cap) +
                                "]");
  }
  const double k = kelly_eval(bump, x);
  // Covers x outside the support and the deep-underflow band at the edges;
  // in both cases every derivative is zero at double precision.
  if (k == 0.0) return 0.0;
  if (order == 0) return k;
  const auto n = prefactor_numerators(bump.alpha, bump.beta, order);
  const double u = (x - bump.alpha) * (bump.beta - x);
  return n[static_cast<std::size_t>(order)].eval(x) / int_pow(u, 2 * order) * k;
}

SwitchingProfile SwitchingProfile::heaviside() {
  SwitchingProfile p;
  p.kind_ = ProfileKind::Heaviside;
  return p;
}

SwitchingProfile SwitchingProfile::ramp(double rate) {
  SwitchingProfile p;
  p.kind_ = ProfileKind::Ramp;
  p.rate_ = rate;
  return p;
}

SwitchingProfile SwitchingProfile::table(
    std::vector<std::pair<double, double>> samples) {
  if (samples.empty()) {
    throw ConfigurationError("table profile requires at least one sample");
  }
  if (samples.front().first < 0.0) {
    throw ConfigurationError("table profile times must start at t >= 0");
  }
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i - 1].first < samples[i].first)) {
      throw ConfigurationError("table profile times must strictly increase");
    }
  }
  SwitchingProfile p;
  p.kind_ = ProfileKind::Table;
  p.samples_ = std::move(samples);
  return p;
}

double SwitchingProfile::value(double t) const {
  if (t < 0.0) return 0.0;
  switch (kind_) {
    case ProfileKind::Heaviside:
      return 1.0;
    case ProfileKind::Ramp:
      return rate_ * t;
    case ProfileKind::Table: {
      if (t <= samples_.front().first) return samples_.front().second;
      if (t >= samples_.back().first) return samples_.back().second;
      auto it = std::upper_bound(
          samples_.begin(), samples_.end(), t,
          [](double v, const std::pair<double, double>& s) {
            return v < s.first;
          });
      const auto& hi = *it;
      const auto& lo = *(it - 1);
      const double w = (t - lo.first) / (hi.first - lo.first);
      return lo.second + w * (hi.second - lo.second);
    }
  }
  return 0.0;
}

std::vector<double> SwitchingProfile::breakpoints(double t0, double t1) const {
  std::vector<double> pts;
  if (kind_ == ProfileKind::Table) {
    for (const auto& s : samples_) {
      if (s.first > t0 && s.first < t1) pts.push_back(s.first);
    }
  }
  return pts;
}

namespace {

// Integral of (c0 + c1 tau) * w(tau) over [a, b].
double linear_weighted_integral(double c0, double c1, ProfileWeight w,
                                double a, double b) {
  switch (w) {
    case ProfileWeight::One:
      return c0 * (b - a) + 0.5 * c1 * (b * b - a * a);
    case ProfileWeight::Tau:
      return 0.5 * c0 * (b * b - a * a) + c1 * (b * b * b - a * a * a) / 3.0;
    case ProfileWeight::SinTau: {
      auto f = [&](double t) {
        return -(c0 + c1 * t) * std::cos(t) + c1 * std::sin(t);
      };
      return f(b) - f(a);
    }
    case ProfileWeight::CosTau: {
      auto f = [&](double t) {
        return (c0 + c1 * t) * std::sin(t) + c1 * std::cos(t);
      };
      return f(b) - f(a);
    }
  }
  return 0.0;
}

}  // namespace

double profile_integral(const SwitchingProfile& profile, ProfileWeight weight,
                        double t) {
  if (t < 0.0) {
    throw std::invalid_argument("profile_integral requires t >= 0");
  }
  if (t == 0.0) return 0.0;
  switch (profile.kind()) {
    case ProfileKind::Heaviside:
      return linear_weighted_integral(1.0, 0.0, weight, 0.0, t);
    case ProfileKind::Ramp:
      return linear_weighted_integral(0.0, profile.rate(), weight, 0.0, t);
    case ProfileKind::Table: {
      // theta is piecewise linear, so each segment has an exact closed form.
      const auto& s = profile.samples();
      std::vector<double> cuts{0.0};
      for (const auto& p : s) {
        if (p.first > 0.0 && p.first < t) cuts.push_back(p.first);
      }
      cuts.push_back(t);
      double sum = 0.0;
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i];
        const double b = cuts[i + 1];
        const double m = 0.5 * (a + b);
        double c0;
        double c1;
        if (m <= s.front().first) {
          c0 = s.front().second;
          c1 = 0.0;
        } else if (m >= s.back().first) {
          c0 = s.back().second;
          c1 = 0.0;
        } else {
          auto it = std::upper_bound(
              s.begin(), s.end(), m,
              [](double v, const std::pair<double, double>& q) {
                return v < q.first;
              });
          const auto& hi = *it;
          const auto& lo = *(it - 1);
          c1 = (hi.second - lo.second) / (hi.first - lo.first);
          c0 = lo.second - c1 * lo.first;
        }
        sum += linear_weighted_integral(c0, c1, weight, a, b);
      }
      return sum;
    }
  }
  return 0.0;
}

}  // namespace iplab
