#pragma once

#include "iplab/grid_integrator.hpp"

namespace iplab {

/// Measurements of one field at one snapshot time. Serialized as part of a
/// diagnostics CSV row.
struct FieldReport {
  double time = 0.0;
  double norm = 0.0;
  double centroid = 0.0;
  double variance = 0.0;
  double support_mass_outside = 0.0;
  double fidelity_vs_exact = 1.0;
};

/// Bundles the standard measurements of a field. The support interval is
/// clamped to the grid domain; reference, when present, supplies the
/// fidelity (1 when absent).
FieldReport make_report(const WaveField& field, double support_lo,
                        double support_hi,
                        const WaveField* reference = nullptr);

/// sqrt of the trapezoid-rule integral of |phi|^2 over the periodic grid.
double norm(const WaveField& field);

/// First moment of |phi|^2 / norm^2. Throws UndefinedMomentError on a
/// vanishing field.
double centroid(const WaveField& field);

/// Second central moment of |phi|^2 / norm^2.
double variance(const WaveField& field);

/// Integral of |phi|^2 over the grid points outside [lo, hi]. The interval
/// must lie inside the grid domain.
double support_mass_outside(const WaveField& field, double lo, double hi);

/// |<a, b>| / (|a| |b|). Requires the same grid (GridMismatchError).
double fidelity(const WaveField& a, const WaveField& b);

/// Schroedinger-picture centroid predicted analytically: with
/// e^(itH0) x e^(-itH0) = u_x(t) x + u_p(t) (-i d) from the Heisenberg map,
/// returns u_x * (bump centroid + X(t)) + u_p * (-P(t)).
double predicted_centroid(const Scenario& scenario, double t);

}  // namespace iplab
