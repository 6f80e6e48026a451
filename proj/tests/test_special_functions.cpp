#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "iplab/quadrature.hpp"
#include "iplab/special_functions.hpp"
#include "oracles.hpp"

using namespace iplab;

TEST_CASE("heaviside switches at zero with value one at the origin") {
  CHECK(heaviside(-0.5) == 0.0);
  CHECK(heaviside(0.0) == 1.0);
  CHECK(heaviside(3.7) == 1.0);
  CHECK(heaviside(-1e-300) == 0.0);
}

TEST_CASE("kelly_eval matches the defining exponential inside the support") {
  const BumpFunction b = make_bump(-1.0, 1.0);
  CHECK(kelly_eval(b, 0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(kelly_eval(b, 0.0) == doctest::Approx(0.3678794412).epsilon(1e-9));
  CHECK(kelly_eval(b, 0.5) ==
        doctest::Approx(std::exp(-4.0 / 3.0)).epsilon(1e-15));
  CHECK(kelly_eval(b, 0.5) == doctest::Approx(0.2635971381).epsilon(1e-9));
}

TEST_CASE("kelly_eval vanishes exactly at and beyond the endpoints") {
  const BumpFunction b = make_bump(-1.0, 1.0, 3.7);
  CHECK(kelly_eval(b, 1.0) == 0.0);
  CHECK(kelly_eval(b, -1.0) == 0.0);
  CHECK(kelly_eval(b, 1.0001) == 0.0);
  CHECK(kelly_eval(b, -250.0) == 0.0);
}

TEST_CASE("kelly bump is symmetric about the interval center") {
  const BumpFunction sym = make_bump(-1.0, 1.0);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double x = u(rng);
    CHECK(kelly_eval(sym, -x) == kelly_eval(sym, x));
  }
  const BumpFunction skew = make_bump(0.7, 3.1, 2.0);
  std::uniform_real_distribution<double> v(0.7, 3.1);
  for (int i = 0; i < 50; ++i) {
    const double x = v(rng);
    const double mirrored = kelly_eval(skew, skew.alpha + skew.beta - x);
    CHECK(mirrored == doctest::Approx(kelly_eval(skew, x)).epsilon(1e-12));
  }
}

TEST_CASE("kelly_derivative: order zero is the function itself") {
  const BumpFunction b = make_bump(-1.0, 1.0);
  CHECK(kelly_derivative(b, 0, 0.3) == kelly_eval(b, 0.3));
}

TEST_CASE("kelly_derivative: first derivative vanishes at the midpoint") {
  const BumpFunction b = make_bump(-1.0, 1.0);
  CHECK(kelly_derivative(b, 1, 0.0) == 0.0);
}

TEST_CASE("kelly_derivative: closed form and difference oracle at x = 0.5") {
  const BumpFunction b = make_bump(-1.0, 1.0);
  const double expected = -16.0 / 9.0 * std::exp(-4.0 / 3.0);
  CHECK(kelly_derivative(b, 1, 0.5) ==
        doctest::Approx(expected).epsilon(1e-13));
  CHECK(kelly_derivative(b, 1, 0.5) ==
        doctest::Approx(-0.4686171344).epsilon(1e-9));
  const auto f = [&](double x) { return kelly_eval(b, x); };
  const double fd = oracles::central_difference(f, 0.5, 1, 1e-5);
  CHECK(std::abs(fd - kelly_derivative(b, 1, 0.5)) < 1e-9);
}

TEST_CASE("kelly_derivative: third derivative flattens toward the edge") {
  const BumpFunction b = kelly_normalize(-1.0, 1.0);
  const auto f = [&](double x) { return kelly_eval(b, x); };
  // Interior check against the difference oracle.
  const double exact = kelly_derivative(b, 3, 0.9);
  const double fd = oracles::central_difference(f, 0.9, 3, 1e-3);
  CHECK(std::abs(fd - exact) < 5e-3 * std::abs(exact));
  // Edge flatness: the value dies off faster than any power of the distance.
  CHECK(std::abs(kelly_derivative(b, 3, 0.995)) < 1e-25);
  CHECK(std::abs(kelly_derivative(b, 3, 0.999)) < 1e-150);
  CHECK(kelly_derivative(b, 3, 1.0) == 0.0);
  const double fd_edge = oracles::central_difference(f, 0.999, 3, 1e-4);
  CHECK(std::abs(fd_edge - kelly_derivative(b, 3, 0.999)) < 1e-60);
}

TEST_CASE("kelly_derivative: exact zero outside the support for all orders") {
  const BumpFunction b = make_bump(-1.5, 0.5, 2.2);
  for (int order = 0; order <= 8; ++order) {
    CHECK(kelly_derivative(b, order, -1.5) == 0.0);
    CHECK(kelly_derivative(b, order, 0.5) == 0.0);
    CHECK(kelly_derivative(b, order, -3.0) == 0.0);
    CHECK(kelly_derivative(b, order, 17.0) == 0.0);
  }
}

TEST_CASE("kelly_derivative: difference estimates converge at second order") {
  const BumpFunction b = kelly_normalize(-1.0, 1.0);
  const auto f = [&](double x) { return kelly_eval(b, x); };
  for (int order = 1; order <= 4; ++order) {
    const double exact = kelly_derivative(b, order, 0.3);
    const double e1 =
        std::abs(oracles::central_difference(f, 0.3, order, 0.02) - exact);
    const double e2 =
        std::abs(oracles::central_difference(f, 0.3, order, 0.01) - exact);
    CHECK(std::log2(e1 / e2) > 1.6);
  }
}

TEST_CASE("kelly_derivative: order cap is enforced and configurable") {
  const BumpFunction b = make_bump(-1.0, 1.0);
  CHECK_THROWS_AS(kelly_derivative(b, 9, 0.2), UnsupportedOrderError);
  CHECK_THROWS_AS(kelly_derivative(b, -1, 0.2), UnsupportedOrderError);
  CHECK(std::isfinite(kelly_derivative(b, 12, 0.2, 12)));
}

TEST_CASE("kelly_normalize produces a unit L2 norm") {
  const BumpFunction b = kelly_normalize(-1.0, 1.0);
  const auto k2 = [&](double x) {
    const double v = kelly_eval(b, x);
    return v * v;
  };
  const double integral = oracles::composite_simpson(k2, -1.0, 1.0, 1 << 17);
  CHECK(std::abs(integral - 1.0) < 1e-10);
  CHECK(b.norm_const == doctest::Approx(2.7411551457069718).epsilon(1e-12));
}

TEST_CASE("kelly_normalize is translation invariant") {
  const BumpFunction a = kelly_normalize(-1.0, 1.0);
  const BumpFunction c = kelly_normalize(0.0, 2.0);
  CHECK(a.norm_const == c.norm_const);
}

TEST_CASE("kelly_normalize on a scaled interval renormalizes to one") {
  const BumpFunction wide = kelly_normalize(-2.0, 2.0);
  CHECK(wide.norm_const != kelly_normalize(-1.0, 1.0).norm_const);
  const auto k2 = [&](double x) {
    const double v = kelly_eval(wide, x);
    return v * v;
  };
  const double integral = oracles::composite_simpson(k2, -2.0, 2.0, 1 << 17);
  CHECK(std::abs(integral - 1.0) < 1e-10);
}

TEST_CASE("kelly_normalize rejects degenerate intervals") {
  CHECK_THROWS_AS(kelly_normalize(1.0, 1.0), InvalidIntervalError);
  CHECK_THROWS_AS(kelly_normalize(2.0, -1.0), InvalidIntervalError);
  CHECK_THROWS_AS(make_bump(0.0, -1.0), InvalidIntervalError);
}

TEST_CASE("switching profiles vanish before zero and clamp at table ends") {
  const auto h = SwitchingProfile::heaviside();
  CHECK(h.value(-1e-9) == 0.0);
  CHECK(h.value(0.0) == 1.0);
  CHECK(h.value(5.0) == 1.0);

  const auto r = SwitchingProfile::ramp(0.5);
  CHECK(r.value(-2.0) == 0.0);
  CHECK(r.value(2.0) == 1.0);

  const auto t = SwitchingProfile::table({{0.0, 0.0}, {1.0, 1.0}, {3.0, 0.5}});
  CHECK(t.value(-0.1) == 0.0);
  CHECK(t.value(0.5) == doctest::Approx(0.5));
  CHECK(t.value(2.0) == doctest::Approx(0.75));
  CHECK(t.value(10.0) == doctest::Approx(0.5));
}

TEST_CASE("table profiles must be strictly increasing in time") {
  using Samples = std::vector<std::pair<double, double>>;
  CHECK_THROWS_AS(SwitchingProfile::table(Samples{{1.0, 0.0}, {1.0, 1.0}}),
                  ConfigurationError);
  CHECK_THROWS_AS(SwitchingProfile::table(Samples{{-0.5, 0.0}, {1.0, 1.0}}),
                  ConfigurationError);
  CHECK_THROWS_AS(SwitchingProfile::table(Samples{}), ConfigurationError);
}

TEST_CASE("profile_integral: instantaneous switch closed forms") {
  const auto h = SwitchingProfile::heaviside();
  CHECK(profile_integral(h, ProfileWeight::One, 2.0) == 2.0);
  CHECK(profile_integral(h, ProfileWeight::Tau, 2.0) == 2.0);
  const double pi = 3.14159265358979323846;
  CHECK(profile_integral(h, ProfileWeight::SinTau, pi) ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(profile_integral(h, ProfileWeight::CosTau, pi / 2) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(profile_integral(h, ProfileWeight::One, 0.0) == 0.0);
}

TEST_CASE("profile_integral: ramp against the quadrature oracle") {
  const auto r = SwitchingProfile::ramp(1.3);
  for (const auto w : {ProfileWeight::One, ProfileWeight::Tau,
                       ProfileWeight::SinTau, ProfileWeight::CosTau}) {
    const auto f = [&](double tau) {
      double wt = 1.0;
      if (w == ProfileWeight::Tau) wt = tau;
      if (w == ProfileWeight::SinTau) wt = std::sin(tau);
      if (w == ProfileWeight::CosTau) wt = std::cos(tau);
      return r.value(tau) * wt;
    };
    const double quad = oracles::composite_simpson(f, 0.0, 2.7, 1 << 14);
    CHECK(profile_integral(r, w, 2.7) == doctest::Approx(quad).epsilon(1e-10));
  }
}

TEST_CASE("profile_integral: table against the quadrature oracle") {
  const auto t = SwitchingProfile::table({{0.0, 0.0}, {0.7, 1.0}, {2.0, 0.3}});
  for (const auto w : {ProfileWeight::One, ProfileWeight::Tau,
                       ProfileWeight::SinTau, ProfileWeight::CosTau}) {
    const auto f = [&](double tau) {
      double wt = 1.0;
      if (w == ProfileWeight::Tau) wt = tau;
      if (w == ProfileWeight::SinTau) wt = std::sin(tau);
      if (w == ProfileWeight::CosTau) wt = std::cos(tau);
      return t.value(tau) * wt;
    };
    const double quad = oracles::composite_simpson(f, 0.0, 3.0, 1 << 16);
    CHECK(profile_integral(t, w, 3.0) == doctest::Approx(quad).epsilon(1e-8));
  }
}

TEST_CASE("profile_integral is additive over subintervals") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 4.0);
  const SwitchingProfile profiles[] = {
      SwitchingProfile::heaviside(), SwitchingProfile::ramp(0.8),
      SwitchingProfile::table({{0.0, 0.2}, {1.5, 1.0}})};
  for (const auto& p : profiles) {
    for (int i = 0; i < 20; ++i) {
      double s = u(rng);
      double t = u(rng);
      if (s > t) std::swap(s, t);
      const double whole = profile_integral(p, ProfileWeight::SinTau, t);
      const double first = profile_integral(p, ProfileWeight::SinTau, s);
      const auto f = [&](double tau) { return p.value(tau) * std::sin(tau); };
      const double segment = oracles::composite_simpson(f, s, t, 1 << 15);
      CHECK(whole - first == doctest::Approx(segment).epsilon(1e-8));
    }
  }
}

TEST_CASE("profile_integral rejects negative upper limits") {
  CHECK_THROWS_AS(profile_integral(SwitchingProfile::heaviside(),
                                   ProfileWeight::One, -1.0),
                  std::invalid_argument);
}

TEST_CASE("exhausted quadrature reports the achieved residual") {
  const auto wild = [](double x) { return std::sin(1.0 / (x + 1e-9)); };
  try {
    adaptive_simpson(wild, 0.0, 1.0, 1e-16, 6);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(e.residual() > 0.0);
  }
}
