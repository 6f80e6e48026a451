#include "iplab/operator_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace iplab {

namespace {

constexpr Complex kImag{0.0, 1.0};

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) {
    r *= static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  return r;
}

double falling_factorial(int m, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= static_cast<double>(m - i);
  return r;
}

}  // namespace

DiffOperator DiffOperator::monomial(Complex c, int x_pow, int d_pow) {
  if (x_pow < 0 || d_pow < 0) {
    throw std::invalid_argument("monomial powers must be nonnegative");
  }
  DiffOperator op;
  op.accumulate(Monomial{x_pow, d_pow}, c);
  return op;
}

DiffOperator DiffOperator::free_hamiltonian() {
  return monomial(-0.5, 0, 2);
}

DiffOperator DiffOperator::oscillator_hamiltonian() {
  return monomial(-0.5, 0, 2) + monomial(0.5, 2, 0);
}

DiffOperator DiffOperator::momentum() { return d(Complex{0.0, -1.0}); }

Complex DiffOperator::coeff(int x_pow, int d_pow) const {
  auto it = terms_.find(Monomial{x_pow, d_pow});
  return it == terms_.end() ? Complex{} : it->second;
}

double DiffOperator::norm_inf() const {
  double m = 0.0;
  for (const auto& [key, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

int DiffOperator::max_x_power() const {
  int m = 0;
  for (const auto& [key, c] : terms_) m = std::max(m, key.x_pow);
  return m;
}

int DiffOperator::max_d_power() const {
  int m = 0;
  for (const auto& [key, c] : terms_) m = std::max(m, key.d_pow);
  return m;
}

void DiffOperator::accumulate(Monomial m, Complex c) {
  if (c == Complex{}) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{}) terms_.erase(it);
  }
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& o) {
  for (const auto& [key, c] : o.terms_) accumulate(key, c);
  return *this;
}

DiffOperator& DiffOperator::operator-=(const DiffOperator& o) {
  for (const auto& [key, c] : o.terms_) accumulate(key, -c);
  return *this;
}

DiffOperator DiffOperator::operator+(const DiffOperator& o) const {
  DiffOperator r = *this;
  r += o;
  return r;
}

DiffOperator DiffOperator::operator-(const DiffOperator& o) const {
  DiffOperator r = *this;
  r -= o;
  return r;
}

DiffOperator DiffOperator::operator-() const { return scaled(-1.0); }

DiffOperator DiffOperator::scaled(Complex s) const {
  DiffOperator r;
  if (s == Complex{}) return r;
  for (const auto& [key, c] : terms_) r.accumulate(key, s * c);
  return r;
}

DiffOperator DiffOperator::operator*(const DiffOperator& o) const {
  // (x^m1 d^n1)(x^m2 d^n2) reduced by the normal-ordering identity
  // d^n x^m = sum_k C(n,k) m!/(m-k)! x^(m-k) d^(n-k).
  DiffOperator r;
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : o.terms_) {
      const int kmax = std::min(a.d_pow, b.x_pow);
      for (int k = 0; k <= kmax; ++k) {
        const double w = binomial(a.d_pow, k) * falling_factorial(b.x_pow, k);
        r.accumulate(Monomial{a.x_pow + b.x_pow - k, a.d_pow + b.d_pow - k},
                     ca * cb * w);
      }
    }
  }
  return r;
}

DiffOperator DiffOperator::chopped(double tol) const {
  DiffOperator r;
  for (const auto& [key, c] : terms_) {
    if (std::abs(c) > tol) r.accumulate(key, c);
  }
  return r;
}

std::string DiffOperator::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real();
    if (c.imag() != 0.0) os << (c.imag() < 0 ? "" : "+") << c.imag() << "i";
    os << ")";
    if (key.x_pow > 0) os << " x^" << key.x_pow;
    if (key.d_pow > 0) os << " d^" << key.d_pow;
  }
  return os.str();
}

DiffOperator commutator(const DiffOperator& a, const DiffOperator& b) {
  return a * b - b * a;
}

DiffOperator ad_power(const DiffOperator& h0, const DiffOperator& a, int n,
                      int max_order) {
  if (n < 0) throw std::invalid_argument("ad_power requires n >= 0");
  if (n > max_order) {
    throw OrderCapError("ad_power order " + std::to_string(n) +
                        " beyond cap " + std::to_string(max_order));
  }
  DiffOperator r = a;
  for (int i = 0; i < n; ++i) r = commutator(h0, r);
  return r;
}

ScaledPerturbation make_perturbation(DiffOperator spatial, double strength,
                                     SwitchingProfile profile) {
  for (const auto& [key, c] : spatial.terms()) {
    if (key.x_pow > 1 || key.d_pow > 1) {
      throw std::invalid_argument(
          "perturbation spatial part must be at most first order in x and d");
    }
  }
  return ScaledPerturbation{std::move(spatial), strength, std::move(profile)};
}

AdResummation resum_ad_series(const DiffOperator& h0, const DiffOperator& a,
                              int max_order, double tol) {
  if (max_order < 2) {
    throw std::invalid_argument("resum_ad_series requires max_order >= 2");
  }
  AdResummation r;
  r.powers.push_back(a);
  double scale = std::max(1.0, a.norm_inf());
  for (int n = 1; n <= max_order; ++n) {
    DiffOperator next = commutator(h0, r.powers.back());
    if (next.is_zero() || next.norm_inf() <= tol * scale) {
      r.terminated = true;
      return r;
    }
    const DiffOperator next_sig = next.chopped(tol * scale);
    for (int j = 0; j < static_cast<int>(r.powers.size()); ++j) {
      const DiffOperator prev_sig = r.powers[j].chopped(tol * scale);
      if (prev_sig.is_zero()) continue;
      if (next_sig.terms().size() != prev_sig.terms().size()) continue;
      // Candidate ratio from the largest coefficient of the earlier power.
      Complex mu{};
      double best = -1.0;
      bool keys_match = true;
      for (const auto& [key, c] : prev_sig.terms()) {
        const Complex cn = next.coeff(key.x_pow, key.d_pow);
        if (cn == Complex{}) {
          keys_match = false;
          break;
        }
        if (std::abs(c) > best) {
          best = std::abs(c);
          mu = cn / c;
        }
      }
      if (!keys_match) continue;
      bool all_match = true;
      for (const auto& [key, c] : next_sig.terms()) {
        if (prev_sig.coeff(key.x_pow, key.d_pow) == Complex{}) {
          all_match = false;  // a monomial absent from the earlier power
          break;
        }
      }
      for (const auto& [key, c] : r.powers[j].terms()) {
        if (!all_match) break;
        const Complex cn = next.coeff(key.x_pow, key.d_pow);
        if (std::abs(cn - mu * c) > tol * scale * (1.0 + std::abs(mu))) {
          all_match = false;
        }
      }
      if (all_match) {
        r.repeat_start = j;
        r.period = n - j;
        r.ratio = mu;
        return r;
      }
    }
    scale = std::max(scale, next.norm_inf());
    r.powers.push_back(std::move(next));
  }
  throw NoClosedFormError(
      "adjoint series neither terminates nor closes within order " +
          std::to_string(max_order),
      r.powers);
}

DiffOperator resummed_operator(const AdResummation& r, double t) {
  const int count = static_cast<int>(r.powers.size());
  DiffOperator sum;
  Complex f{1.0, 0.0};  // (it)^n / n!
  for (int n = 0; n < count; ++n) {
    sum += r.powers[n].scaled(f);
    f *= kImag * t / static_cast<double>(n + 1);
  }
  if (r.terminated) return sum;

  std::vector<DiffOperator> window(r.powers.begin() + r.repeat_start,
                                   r.powers.end());
  int n = count;
  int quiet = 0;
  while (n < 1000) {
    const int slot = (n - r.repeat_start) % r.period;
    window[slot] = window[slot].scaled(r.ratio);
    const double term_mag = window[slot].norm_inf() * std::abs(f);
    sum += window[slot].scaled(f);
    f *= kImag * t / static_cast<double>(n + 1);
    ++n;
    if (term_mag < 1e-17 * (1.0 + sum.norm_inf())) {
      if (++quiet >= 3) break;
    } else {
      quiet = 0;
    }
  }
  return sum;
}

AdSeriesFn::AdSeriesFn(std::vector<Complex> coeffs, bool terminated,
                       int repeat_start, int period, Complex ratio,
                       Complex phase)
    : coeffs_(std::move(coeffs)),
      terminated_(terminated),
      repeat_start_(repeat_start),
      period_(period),
      ratio_(ratio),
      phase_(phase) {}

double AdSeriesFn::value(double t) const {
  Complex sum{};
  Complex f{1.0, 0.0};
  const int count = static_cast<int>(coeffs_.size());
  for (int n = 0; n < count; ++n) {
    sum += coeffs_[n] * f;
    f *= kImag * t / static_cast<double>(n + 1);
  }
  if (!terminated_) {
    std::vector<Complex> window(coeffs_.begin() + repeat_start_,
                                coeffs_.end());
    int n = count;
    int quiet = 0;
    while (n < 1000) {
      const int slot = (n - repeat_start_) % period_;
      window[slot] *= ratio_;
      const double term_mag = std::abs(window[slot]) * std::abs(f);
      sum += window[slot] * f;
      f *= kImag * t / static_cast<double>(n + 1);
      ++n;
      if (term_mag < 1e-17 * (1.0 + std::abs(sum))) {
        if (++quiet >= 3) break;
      } else {
        quiet = 0;
      }
    }
  }
  sum *= phase_;
  if (std::abs(sum.imag()) > 1e-9 * (1.0 + std::abs(sum.real()))) {
    throw Error("resummed coefficient function is not real-valued");
  }
  return sum.real();
}

double TimeFunction::value(double t) const {
  if (const TrigPoly* p = std::get_if<TrigPoly>(&impl_)) return p->value(t);
  return std::get<AdSeriesFn>(impl_).value(t);
}

DiffOperator EffectiveHamiltonian::operator_at(double t) const {
  DiffOperator op = DiffOperator::x(coeff_x.value(t));
  op += DiffOperator::d(Complex{0.0, -coeff_d.value(t)});
  op += DiffOperator::identity(coeff_1.value(t));
  return op;
}

namespace {

// Extracts the coefficient function of one monomial from the detected series
// as a real closed form where the pattern is recognized, else as a
// truncated-series evaluator. phase rotates the complex series so that the
// physical coefficient (A, B, or C) comes out real.
TimeFunction extract_coefficient(const AdResummation& r, Monomial key,
                                 Complex phase, double tol) {
  std::vector<Complex> b;
  b.reserve(r.powers.size());
  for (const auto& p : r.powers) b.push_back(p.coeff(key.x_pow, key.d_pow));

  const auto nearly_real = [tol](Complex q) {
    return std::abs(q.imag()) <= tol * (1.0 + std::abs(q));
  };

  if (r.terminated) {
    // sum_n b_n (it)^n / n! is a polynomial in t.
    TrigPoly poly;
    bool ok = true;
    Complex in{1.0, 0.0};  // i^n
    double fact = 1.0;
    for (std::size_t n = 0; n < b.size(); ++n) {
      const Complex q = phase * in * b[n] / fact;
      if (!nearly_real(q)) {
        ok = false;
        break;
      }
      poly = poly + TrigPoly::monomial(q.real(), static_cast<int>(n));
      in *= kImag;
      fact *= static_cast<double>(n + 1);
    }
    if (ok) return TimeFunction{poly};
    return TimeFunction{AdSeriesFn{b, true, 0, 0, Complex{}, phase}};
  }

  if (r.repeat_start == 0 && r.period == 2 && nearly_real(r.ratio) &&
      r.ratio.real() > 0.0) {
    // b_0 cos(w t) + b_1 (i/w) sin(w t) with w = sqrt(mu).
    const double omega = std::sqrt(r.ratio.real());
    const Complex q_cos = phase * b[0];
    const Complex q_sin = phase * kImag * b[1] / omega;
    if (nearly_real(q_cos) && nearly_real(q_sin)) {
      return TimeFunction{
          TrigPoly::harmonic(q_cos.real(), q_sin.real(), omega)};
    }
  }
  return TimeFunction{
      AdSeriesFn{b, false, r.repeat_start, r.period, r.ratio, phase}};
}

}  // namespace

EffectiveHamiltonian effective_hamiltonian(const DiffOperator& h0,
                                           const ScaledPerturbation& hint,
                                           int max_order, double tol) {
  AdResummation r = resum_ad_series(h0, hint.spatial, max_order, tol);
  for (const auto& p : r.powers) {
    for (const auto& [key, c] : p.terms()) {
      const bool first_order = (key.x_pow == 1 && key.d_pow == 0) ||
                               (key.x_pow == 0 && key.d_pow == 1) ||
                               (key.x_pow == 0 && key.d_pow == 0);
      if (!first_order) {
        throw NoClosedFormError(
            "summed series leaves the first-order operator family: " +
                p.to_string(),
            r.powers);
      }
    }
  }
  EffectiveHamiltonian eff;
  eff.coeff_x = CoefficientFunction{
      hint.strength, hint.profile,
      extract_coefficient(r, Monomial{1, 0}, Complex{1.0, 0.0}, tol)};
  eff.coeff_d = CoefficientFunction{
      hint.strength, hint.profile,
      extract_coefficient(r, Monomial{0, 1}, kImag, tol)};
  eff.coeff_1 = CoefficientFunction{
      hint.strength, hint.profile,
      extract_coefficient(r, Monomial{0, 0}, Complex{1.0, 0.0}, tol)};
  eff.h0 = h0;
  eff.source = hint;
  return eff;
}

DiffOperator heisenberg_map(const DiffOperator& h0, const DiffOperator& obs,
                            double t, int max_order, double tol) {
  return resummed_operator(resum_ad_series(h0, obs, max_order, tol), t);
}

DiffOperator series_partial_sum(const DiffOperator& h0,
                                const ScaledPerturbation& hint, double t,
                                int n_terms) {
  if (n_terms < 1) {
    throw std::invalid_argument("series_partial_sum requires n_terms >= 1");
  }
  if (!std::isfinite(t)) {
    throw std::invalid_argument("series_partial_sum requires finite t");
  }
  DiffOperator sum;
  DiffOperator a = hint.spatial;
  Complex f{1.0, 0.0};
  for (int n = 0; n < n_terms; ++n) {
    sum += a.scaled(f);
    f *= kImag * t / static_cast<double>(n + 1);
    if (n + 1 < n_terms) a = commutator(h0, a);
  }
  return sum.scaled(hint.strength * hint.profile.value(t));
}

}  // namespace iplab
