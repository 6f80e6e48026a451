// Test-side oracles, independent of the library's numerical paths.

#pragma once

#include <cmath>
#include <functional>

namespace oracles {

/// Fixed-panel composite Simpson rule (panels must be even).
inline double composite_simpson(const std::function<double(double)>& f,
                                double a, double b, int panels) {
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) {
    sum += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
  }
  return sum * h / 3.0;
}

/// Central finite-difference estimate of the n-th derivative from function
/// values only: sum_k (-1)^k C(n,k) f(x + (n/2 - k) h) / h^n. Second order.
inline double central_difference(const std::function<double(double)>& f,
                                 double x, int order, double h) {
  double sum = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= order; ++k) {
    const double node = x + (0.5 * order - k) * h;
    sum += (k % 2 == 0 ? 1.0 : -1.0) * binom * f(node);
    binom *= static_cast<double>(order - k) / static_cast<double>(k + 1);
  }
  return sum / std::pow(h, order);
}

}  // namespace oracles
