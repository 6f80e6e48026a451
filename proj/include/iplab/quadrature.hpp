#pragma once

#include <functional>
#include <vector>

#include "iplab/errors.hpp"

namespace iplab {

inline constexpr double kQuadratureTol = 1e-12;

/// Adaptive Simpson integration of f over [a, b] to absolute tolerance.
/// Throws QuadratureError (carrying the achieved residual estimate) if the
/// recursion depth is exhausted before the tolerance is met.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol = kQuadratureTol,
                        int max_depth = 48);

/// Same, but splits the interval at the given interior breakpoints first.
/// Breakpoints outside (a, b) are ignored.
double adaptive_simpson_split(const std::function<double(double)>& f, double a,
                              double b, const std::vector<double>& breakpoints,
                              double abs_tol = kQuadratureTol,
                              int max_depth = 48);

}  // namespace iplab
