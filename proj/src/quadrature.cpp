#include "iplab/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace iplab {

namespace {

struct SimpsonState {
  const std::function<double(double)>& f;
  double worst_residual = 0.0;
  bool converged = true;
};

double simpson(double fa, double fm, double fb, double a, double b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double refine(SimpsonState& st, double a, double b, double fa, double fm,
              double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = st.f(lm);
  const double frm = st.f(rm);
  const double left = simpson(fa, flm, fm, a, m);
  const double right = simpson(fm, frm, fb, m, b);
  const double err = (left + right - whole) / 15.0;
  if (std::abs(err) <= tol || b - a < 1e-14 * (1.0 + std::abs(a))) {
    return left + right + err;
  }
  if (depth <= 0) {
    st.converged = false;
    st.worst_residual = std::max(st.worst_residual, std::abs(err));
    return left + right + err;
  }
  return refine(st, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         refine(st, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  SimpsonState st{f};
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = simpson(fa, fm, fb, a, b);
  const double value = refine(st, a, b, fa, fm, fb, whole, abs_tol, max_depth);
  if (!st.converged) {
    throw QuadratureError("adaptive Simpson did not converge to tolerance",
                          st.worst_residual);
  }
  return value;
}

double adaptive_simpson_split(const std::function<double(double)>& f, double a,
                              double b, const std::vector<double>& breakpoints,
                              double abs_tol, int max_depth) {
  std::vector<double> pts{a};
  for (double p : breakpoints) {
    if (p > a && p < b) pts.push_back(p);
  }
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  double sum = 0.0;
  const double piece_tol = abs_tol / static_cast<double>(pts.size() - 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    sum += adaptive_simpson(f, pts[i], pts[i + 1], piece_tol, max_depth);
  }
  return sum;
}

}  // namespace iplab
