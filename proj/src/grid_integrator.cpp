#include "iplab/grid_integrator.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <thread>
#include <unordered_map>

#include "iplab/classical_oracle.hpp"

namespace iplab {

namespace {

// FFTW's planner is not reentrant; plan execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class FftPlan {
 public:
  explicit FftPlan(int n) : n_(n) {
    buf_ = static_cast<fftw_complex*>(
        fftw_malloc(sizeof(fftw_complex) * static_cast<std::size_t>(n)));
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd_ = fftw_plan_dft_1d(n, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(n, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }

  ~FftPlan() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(buf_);
  }

  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  void forward(std::vector<std::complex<double>>& v) { run(v, fwd_, 1.0); }

  void backward_scaled(std::vector<std::complex<double>>& v) {
    run(v, bwd_, 1.0 / n_);
  }

 private:
  void run(std::vector<std::complex<double>>& v, fftw_plan plan,
           double scale) {
    auto* b = reinterpret_cast<std::complex<double>*>(buf_);
    std::copy(v.begin(), v.end(), b);
    fftw_execute(plan);
    for (int j = 0; j < n_; ++j) v[static_cast<std::size_t>(j)] = scale * b[j];
  }

  int n_;
  fftw_complex* buf_;
  fftw_plan fwd_;
  fftw_plan bwd_;
};

FftPlan& plan_for(int n) {
  thread_local std::unordered_map<int, std::unique_ptr<FftPlan>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<FftPlan>(n);
  return *slot;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// exp(-i * (dt/2) * V(x)) applied in position space.
void apply_position_phase(WaveField& f, double half_dt, bool oscillator,
                          double linear_coupling) {
  if (!oscillator && linear_coupling == 0.0) return;
  const int n = f.grid.n_points;
  for (int j = 0; j < n; ++j) {
    const double x = f.grid.x(j);
    const double v = (oscillator ? 0.5 * x * x : 0.0) + linear_coupling * x;
    f.values[static_cast<std::size_t>(j)] *= std::polar(1.0, -half_dt * v);
  }
}

// exp(-i * dt * (k^2/2 + drift * k)) applied in Fourier space.
void apply_fourier_phase(WaveField& f, double dt, double drift) {
  FftPlan& plan = plan_for(f.grid.n_points);
  plan.forward(f.values);
  const int n = f.grid.n_points;
  for (int j = 0; j < n; ++j) {
    const double k = f.grid.wavenumber(j);
    f.values[static_cast<std::size_t>(j)] *=
        std::polar(1.0, -dt * (0.5 * k * k + drift * k));
  }
  plan.backward_scaled(f.values);
}

}  // namespace

double Grid::wavenumber(int j) const {
  const double dk = 2.0 * std::numbers::pi / length();
  const int m = j < n_points / 2 ? j : j - n_points;
  return dk * m;
}

Grid make_grid(double x_min, double x_max, int n_points) {
  if (!(x_min < x_max)) {
    throw ConfigurationError("grid requires x_min < x_max");
  }
  if (!is_power_of_two(n_points) || n_points < 256) {
    throw ConfigurationError(
        "grid requires a power-of-two point count >= 256, got " +
        std::to_string(n_points));
  }
  return Grid{x_min, x_max, n_points};
}

namespace {

// Smallest k with at most eps of the bump's momentum mass above it, found by
// a Fourier probe of the sampled bump. The Kelly function's momentum tail
// decays only stretched-exponentially, so this sets how much phase space the
// grid must cover.
double momentum_tail_cut(const BumpFunction& bump, double eps) {
  const int n = 16384;
  const double half_span = 4.0 * bump.width();
  const double x0 = bump.center() - half_span;
  const double h = 2.0 * half_span / n;
  std::vector<std::complex<double>> v(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    v[static_cast<std::size_t>(j)] = kelly_eval(bump, x0 + j * h);
  }
  plan_for(n).forward(v);
  const double dk = std::numbers::pi / half_span;
  std::vector<double> mass(static_cast<std::size_t>(n) / 2, 0.0);
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    const int m = std::abs(j < n / 2 ? j : j - n);
    const double w = std::norm(v[static_cast<std::size_t>(j)]);
    total += w;
    if (m < n / 2) mass[static_cast<std::size_t>(m)] += w;
  }
  double tail = 0.0;
  for (int m = n / 2 - 1; m >= 1; --m) {
    tail += mass[static_cast<std::size_t>(m)];
    if (tail > eps * total) return (m + 1) * dk;
  }
  return dk;
}

struct TimeRange {
  double lo = 0.0;
  double hi = 0.0;
};

}  // namespace

Grid auto_grid(const Scenario& scenario, double t_final, int n_points,
               double margin_widths) {
  // The domain must hold the transported interaction-picture support, the
  // classical packet trace, and the ballistic flight (free H0) or phase-space
  // swing (oscillator H0) of the bump's momentum tail. The tail cut is
  // shrunk until the grid's own momentum range can represent it.
  if (!(t_final > 0.0)) {
    throw ConfigurationError("auto_grid requires t_final > 0");
  }
  const ScenarioSolution s = solve_scenario(scenario);
  const double width = scenario.beta - scenario.alpha;
  const bool oscillator = scenario.h0_kind() == H0Kind::Oscillator;

  const int samples = 1024;
  TimeRange shift;
  double p_max = 0.0;
  std::vector<double> trace(samples + 1);
  for (int i = 0; i <= samples; ++i) {
    const double t = t_final * i / samples;
    const double x_shift = s.sol.displacement(t);
    shift.lo = std::min(shift.lo, x_shift);
    shift.hi = std::max(shift.hi, x_shift);
    p_max = std::max(p_max, std::abs(s.sol.momentum_phase(t)));
    trace[static_cast<std::size_t>(i)] =
        rk4_position(scenario, s.bump.center(), 0.0, t, t_final / samples);
  }
  const double psi_lo = scenario.alpha + shift.lo;
  const double psi_hi = scenario.beta + shift.hi;

  const double margin = margin_widths * width;
  double k_cut = momentum_tail_cut(s.bump, 1e-7);
  double lo = psi_lo;
  double hi = psi_hi;
  for (int iter = 0; iter < 80; ++iter) {
    TimeRange swing{trace[0], trace[0]};
    for (int i = 0; i <= samples; ++i) {
      const double t = t_final * i / samples;
      const double reach = oscillator ? k_cut : k_cut * t;
      swing.lo = std::min(swing.lo, trace[static_cast<std::size_t>(i)] -
                                        0.5 * width - reach);
      swing.hi = std::max(swing.hi, trace[static_cast<std::size_t>(i)] +
                                        0.5 * width + reach);
    }
    lo = std::min(psi_lo, swing.lo) - margin;
    hi = std::max(psi_hi, swing.hi) + margin;
    const double k_max = std::numbers::pi * n_points / (hi - lo);
    if (k_max >= k_cut + p_max + 5.0 || k_cut < 2.0) break;
    k_cut *= 0.92;
  }
  return make_grid(lo, hi, n_points);
}

WaveField initialize(const Grid& grid, const BumpFunction& bump) {
  if (!(bump.alpha > grid.x_min && bump.beta < grid.x_max)) {
    throw SupportOutOfDomainError(
        "bump support must lie strictly inside the grid domain");
  }
  WaveField f{grid, std::vector<std::complex<double>>(
                        static_cast<std::size_t>(grid.n_points)),
              0.0};
  for (int j = 0; j < grid.n_points; ++j) {
    f.values[static_cast<std::size_t>(j)] = kelly_eval(bump, grid.x(j));
  }
  return f;
}

WaveField sample_exact(const Grid& grid, const ExactSolution& sol, double t,
                       int n_threads) {
  const auto snap = sol.snapshot(t);
  WaveField f{grid, std::vector<std::complex<double>>(
                        static_cast<std::size_t>(grid.n_points)),
              t};
  auto fill = [&](int begin, int end) {
    for (int j = begin; j < end; ++j) {
      f.values[static_cast<std::size_t>(j)] = snap.psi(grid.x(j));
    }
  };
  if (n_threads <= 1) {
    fill(0, grid.n_points);
  } else {
    std::vector<std::thread> workers;
    const int chunk = (grid.n_points + n_threads - 1) / n_threads;
    for (int w = 0; w < n_threads; ++w) {
      const int begin = w * chunk;
      const int end = std::min(grid.n_points, begin + chunk);
      if (begin >= end) break;
      workers.emplace_back(fill, begin, end);
    }
    for (auto& th : workers) th.join();
  }
  return f;
}

void step(WaveField& field, const Scenario& scenario, double dt) {
  if (dt == 0.0) throw std::invalid_argument("step requires dt != 0");
  const double t_mid = field.time + 0.5 * dt;
  const double coupling = scenario.lambda * scenario.theta.value(t_mid);
  const bool oscillator = scenario.h0_kind() == H0Kind::Oscillator;
  const bool momentum = scenario.momentum_coupling();
  const double linear = momentum ? 0.0 : coupling;
  const double drift = momentum ? coupling : 0.0;

  apply_position_phase(field, 0.5 * dt, oscillator, linear);
  apply_fourier_phase(field, dt, drift);
  apply_position_phase(field, 0.5 * dt, oscillator, linear);
  field.time += dt;
}

std::vector<WaveField> evolve(const Scenario& scenario, const Grid& grid,
                              double t_final, double dt, int snapshot_every) {
  if (!(t_final > 0.0)) throw ConfigurationError("evolve requires t_final > 0");
  if (!(dt > 0.0)) throw ConfigurationError("evolve requires dt > 0");
  if (snapshot_every < 1) {
    throw ConfigurationError("evolve requires snapshot_every >= 1");
  }
  const long n_steps = std::lround(t_final / dt);
  if (n_steps < 1) throw ConfigurationError("evolve requires t_final >= dt");

  const BumpFunction bump = kelly_normalize(scenario.alpha, scenario.beta);
  WaveField field = initialize(grid, bump);
  std::vector<WaveField> snapshots;
  snapshots.push_back(field);
  for (long i = 1; i <= n_steps; ++i) {
    step(field, scenario, dt);
    field.time = static_cast<double>(i) * dt;
    if (i % snapshot_every == 0 || i == n_steps) snapshots.push_back(field);
  }
  return snapshots;
}

void advance_to(WaveField& field, const Scenario& scenario, double t_target,
                double dt_hint) {
  const double span = t_target - field.time;
  if (span <= 0.0) return;
  const long n = std::max(1L, std::lround(std::ceil(span / dt_hint)));
  const double dt = span / static_cast<double>(n);
  const double t0 = field.time;
  for (long i = 1; i <= n; ++i) {
    step(field, scenario, dt);
    field.time = t0 + span * static_cast<double>(i) / static_cast<double>(n);
  }
  field.time = t_target;
}

WaveField free_evolve(const WaveField& field, H0Kind h0_kind, double t,
                      double dt_substep) {
  WaveField out = field;
  if (t == 0.0) return out;
  if (h0_kind == H0Kind::Free) {
    apply_fourier_phase(out, t, 0.0);
    out.time = field.time;
    return out;
  }
  const long n = std::max(1L, std::lround(std::ceil(std::abs(t) / dt_substep)));
  const double h = t / static_cast<double>(n);
  for (long i = 0; i < n; ++i) {
    apply_position_phase(out, 0.5 * h, true, 0.0);
    apply_fourier_phase(out, h, 0.0);
    apply_position_phase(out, 0.5 * h, true, 0.0);
  }
  out.time = field.time;
  return out;
}

}  // namespace iplab
