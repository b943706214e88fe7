#include "mswave/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace mswave {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<Complex> spectrum_of(const RealField& u) {
  std::vector<Complex> half(static_cast<std::size_t>(u.grid().spectral_size()));
  u.grid().forward(u.values(), half);
  return half;
}

// sum over the full spectrum of weight(k) |u_k|^2, folding k and -k together.
// The Nyquist mode appears once; weight receives a flag so odd derivatives can drop it.
template <class Weight>
double parseval(std::span<const Complex> half, Weight weight) {
  const int last = static_cast<int>(half.size()) - 1;
  double sum = 0.0;
  for (int k = last; k >= 0; --k) {
    const double mult = (k == 0 || k == last) ? 1.0 : 2.0;
    sum += mult * weight(k, k == last) * std::norm(half[static_cast<std::size_t>(k)]);
  }
  return sum;
}

double energy_from(std::span<const Complex> half, double mu) {
  return 0.5 * parseval(half, [mu](int k, bool nyq) {
           const double w2 = nyq ? 0.0 : (kTwoPi * k) * (kTwoPi * k);
           return 1.0 + (mu / 12.0) * w2;
         });
}

double h_from(std::span<const Complex> half, double mu) {
  return 0.5 * parseval(half, [mu](int k, bool nyq) {
           const double w2 = (kTwoPi * k) * (kTwoPi * k);
           return 1.0 + (nyq ? 0.0 : (mu / 6.0) * w2) + (mu * mu / 144.0) * w2 * w2;
         });
}


void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be positive and finite");
}

}  // namespace

std::string_view to_string(NormsSource source) { return source == NormsSource::Numeric ? "numeric" : "paper"; }

NormsSource parse_norms_source(std::string_view text) {
  if (text == "numeric") return NormsSource::Numeric;
  if (text == "paper") return NormsSource::Paper;
  throw std::invalid_argument("norms_source must be 'numeric' or 'paper' (got '" + std::string(text) + "')");
}

double energy_E(const State& state, double mu) {
  require_positive(mu, "mu");
  return energy_from(spectrum_of(state.u), mu);
}

double functional_H(const State& state, double mu) {
  require_positive(mu, "mu");
  return h_from(spectrum_of(state.u), mu);
}

double sobolev_norm(const State& state, double s) {
  if (!(s >= 0.0 && s <= 4.0)) throw std::invalid_argument("sobolev_norm: s must lie in [0, 4]");
  const auto half = spectrum_of(state.u);
  return std::sqrt(parseval(half, [s](int k, bool) { return std::pow(1.0 + (kTwoPi * k) * (kTwoPi * k), s); }));
}

Extremum slope_sup(const State& state) { return interpolant_max(derivative(state.u, 1)); }

double c0_energy(const RealField& u0, double mu) { return 2.0 * energy_E(State{u0, 0.0}, mu); }

double amplitude_bound(double c0, double mu) {
  require_positive(mu, "mu");
  return (13.0 / mu) * c0;
}

double breaking_threshold(const Params& params, double c0, const KernelNorms& norms, NormsSource source) {
  validate(params);
  if (!(c0 >= 0.0) || !std::isfinite(c0)) throw std::invalid_argument("c0 must be nonnegative and finite");
  const double e = params.epsilon;
  const double mu = params.mu;
  const double n2 = source == NormsSource::Numeric ? norms.n2_numeric : norms.n2_paper;
  const double ninf = source == NormsSource::Numeric ? norms.ninf_numeric : norms.ninf_paper;
  const double r = 13.0 / mu;
  const double sr = std::sqrt(r);
  const double c_half = std::sqrt(c0);
  const double c_3half = c0 * c_half;
  const double c_2 = c0 * c0;
  const double bracket = 2.0 * n2 * c_half + 2.5 * e * ninf * c0 + 0.125 * e * e * ninf * sr * c_3half +
                         (3.0 / 64.0) * e * e * e * ninf * r * c_2 + 1.75 * e * ninf * c0 + 2.0 * sr * c_half +
                         2.5 * e * r * c0 + 0.125 * e * e * r * sr * c_3half + (3.0 / 64.0) * e * e * e * r * r * c_2;
  return 12.0 / (mu * e) * bracket;
}

BreakingReport breaking_report(const RealField& u0, const Params& params, const KernelNorms& norms,
                               NormsSource source) {
  validate(params);
  const RealField ux = derivative(u0, 1);
  const Extremum hi = interpolant_max(ux);
  const Extremum lo = interpolant_min(ux);
  const double scale = std::max(1.0, u0.max_abs());
  if (hi.value <= 1e-12 * scale)
    throw std::invalid_argument("breaking_report: initial profile is constant, so S(0) = 0 and the bounds are undefined");

  BreakingReport r;
  r.norms_source = source;
  r.c0 = c0_energy(u0, params.mu);
  r.inf_slope_sq = lo.value * lo.value;
  r.threshold = breaking_threshold(params, r.c0, norms, source);
  r.criterion_satisfied = r.inf_slope_sq > r.threshold;
  r.s0 = hi.value;
  r.t_lower = 4.0 / (11.0 * params.epsilon * r.s0);
  r.t_upper = 4.0 / (3.0 * params.epsilon * r.s0);
  return r;
}

namespace {

double envelope(double s0, double rate, double t, const char* name) {
  require_positive(s0, "s0");
  if (!(t >= 0.0)) throw std::invalid_argument("envelope time must be nonnegative");
  const double denom = 1.0 - rate * s0 * t;
  if (!(denom > 0.0))
    throw std::domain_error(std::string(name) + " envelope: t = " + std::to_string(t) + " is at or past its blow-up time " +
                            std::to_string(1.0 / (rate * s0)));
  return s0 / denom;
}

}  // namespace

double slow_envelope(double s0, double epsilon, double t) {
  require_positive(epsilon, "epsilon");
  return envelope(s0, 0.75 * epsilon, t, "slow");
}

double fast_envelope(double s0, double epsilon, double t) {
  require_positive(epsilon, "epsilon");
  return envelope(s0, 2.75 * epsilon, t, "fast");
}

std::pair<double, double> envelope_bounds(double s0, double epsilon, double t) {
  return {slow_envelope(s0, epsilon, t), fast_envelope(s0, epsilon, t)};
}

DiagnosticsRecord make_record(const State& state, double mu, int cutoff) {
  const auto half = spectrum_of(state.u);
  const RealField ux = derivative(state.u, 1);
  const Extremum hi = interpolant_max(ux);
  DiagnosticsRecord r;
  r.t = state.t;
  r.energy_e = energy_from(half, mu);
  r.functional_h = h_from(half, mu);
  r.slope_sup = hi.value;
  r.slope_argmax = hi.location;
  r.min_ux = interpolant_min(ux).value;
  r.max_abs_u = state.u.max_abs();
  r.mean_u = state.u.mean();
  r.tail_fraction = tail_fraction(half, cutoff);
  return r;
}

}  // namespace mswave
