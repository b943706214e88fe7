#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "mswave/kernel.hpp"
#include "mswave/model.hpp"

namespace mswave {

/// Scalar diagnostics of one time sample.
struct DiagnosticsRecord {
  double t = 0.0;
  double energy_e = 0.0;
  double functional_h = 0.0;
  double slope_sup = 0.0;
  double slope_argmax = 0.0;
  double min_ux = 0.0;
  double max_abs_u = 0.0;
  double mean_u = 0.0;
  double tail_fraction = 0.0;
};

enum class NormsSource { Numeric, Paper };

std::string_view to_string(NormsSource source);
/// Accepts "numeric" or "paper"; throws std::invalid_argument otherwise.
NormsSource parse_norms_source(std::string_view text);

struct BreakingReport {
  double c0 = 0.0;
  double inf_slope_sq = 0.0;
  double threshold = 0.0;
  bool criterion_satisfied = false;
  double s0 = 0.0;
  double t_lower = 0.0;
  double t_upper = 0.0;
  NormsSource norms_source = NormsSource::Numeric;
};

/// E = (1/2) int (u^2 + (mu/12) u_x^2) dx by Parseval.
double energy_E(const State& state, double mu);
/// H = (1/2) int (u^2 + (mu/6) u_x^2 + (mu^2/144) u_xx^2) dx by Parseval.
double functional_H(const State& state, double mu);
/// (sum_k (1 + (2 pi k)^2)^s |u_k|^2)^{1/2} for s in [0, 4].
double sobolev_norm(const State& state, double s);

/// Maximum of the interpolated u_x and its location.
Extremum slope_sup(const State& state);

/// C0 = int (u0^2 + (mu/12) u0_x^2) dx = 2 E(u0).
double c0_energy(const RealField& u0, double mu);
/// (13/mu) C0, the bound on max u^2.
double amplitude_bound(double c0, double mu);

/// Right-hand side of the breaking criterion for the chosen norm source.
double breaking_threshold(const Params& params, double c0, const KernelNorms& norms, NormsSource source);

/// Throws std::invalid_argument if u0 is constant (zero included), since then S(0) = 0.
BreakingReport breaking_report(const RealField& u0, const Params& params, const KernelNorms& norms,
                               NormsSource source);

/// Solutions of s' = (3/4) eps s^2 and s' = (11/4) eps s^2 with s(0) = s0.
double slow_envelope(double s0, double epsilon, double t);
double fast_envelope(double s0, double epsilon, double t);
/// (slow, fast). Throws std::domain_error naming the envelope if t is at or
/// past its blow-up time.
std::pair<double, double> envelope_bounds(double s0, double epsilon, double t);

/// All per-sample diagnostics; the tail fraction uses the given dealias cutoff.
DiagnosticsRecord make_record(const State& state, double mu, int cutoff);

}  // namespace mswave
