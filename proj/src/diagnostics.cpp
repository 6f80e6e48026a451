#include "iplab/diagnostics.hpp"

#include <cmath>

namespace iplab {

namespace {

double density_integral(const WaveField& f) {
  double sum = 0.0;
  for (const auto& v : f.values) sum += std::norm(v);
  return sum * f.grid.spacing();
}

}  // namespace

double norm(const WaveField& field) { return std::sqrt(density_integral(field)); }

double centroid(const WaveField& field) {
  const double mass = density_integral(field);
  if (mass <= 0.0) {
    throw UndefinedMomentError("centroid of a vanishing field");
  }
  double m1 = 0.0;
  for (int j = 0; j < field.grid.n_points; ++j) {
    m1 += field.grid.x(j) * std::norm(field.values[static_cast<std::size_t>(j)]);
  }
  return m1 * field.grid.spacing() / mass;
}

double variance(const WaveField& field) {
  const double mass = density_integral(field);
  if (mass <= 0.0) {
    throw UndefinedMomentError("variance of a vanishing field");
  }
  const double c = centroid(field);
  double m2 = 0.0;
  for (int j = 0; j < field.grid.n_points; ++j) {
    const double d = field.grid.x(j) - c;
    m2 += d * d * std::norm(field.values[static_cast<std::size_t>(j)]);
  }
  return m2 * field.grid.spacing() / mass;
}

double support_mass_outside(const WaveField& field, double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("interval requires lo < hi");
  if (lo < field.grid.x_min || hi > field.grid.x_max) {
    throw std::invalid_argument("interval must lie inside the grid domain");
  }
  double sum = 0.0;
  for (int j = 0; j < field.grid.n_points; ++j) {
    const double x = field.grid.x(j);
    if (x < lo || x > hi) {
      sum += std::norm(field.values[static_cast<std::size_t>(j)]);
    }
  }
  return sum * field.grid.spacing();
}

double fidelity(const WaveField& a, const WaveField& b) {
  if (!(a.grid == b.grid)) {
    throw GridMismatchError("fidelity requires fields on the same grid");
  }
  std::complex<double> overlap{};
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t j = 0; j < a.values.size(); ++j) {
    overlap += std::conj(a.values[j]) * b.values[j];
    na += std::norm(a.values[j]);
    nb += std::norm(b.values[j]);
  }
  if (na <= 0.0 || nb <= 0.0) {
    throw UndefinedMomentError("fidelity of a vanishing field");
  }
  return std::abs(overlap) / std::sqrt(na * nb);
}

FieldReport make_report(const WaveField& field, double support_lo,
                        double support_hi, const WaveField* reference) {
  FieldReport report;
  report.time = field.time;
  report.norm = norm(field);
  report.centroid = centroid(field);
  report.variance = variance(field);
  const double lo = std::max(support_lo, field.grid.x_min);
  const double hi = std::min(support_hi, field.grid.x_max);
  report.support_mass_outside =
      lo < hi ? support_mass_outside(field, lo, hi)
              : report.norm * report.norm;
  report.fidelity_vs_exact =
      reference != nullptr ? fidelity(field, *reference) : 1.0;
  return report;
}

double predicted_centroid(const Scenario& scenario, double t) {
  const DiffOperator evolved_x =
      heisenberg_map(scenario.h0(), DiffOperator::x(), t);
  const Complex cx = evolved_x.coeff(1, 0);
  const Complex cd = evolved_x.coeff(0, 1);
  const double u_x = cx.real();
  const double u_p = (Complex{0.0, 1.0} * cd).real();
  const ScenarioSolution s = solve_scenario(scenario);
  const double c0 = s.bump.center();
  return u_x * (c0 + s.sol.displacement(t)) +
         u_p * (-s.sol.momentum_phase(t));
}

}  // namespace iplab
