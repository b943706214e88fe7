#include "mswave/timestepper.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mswave {

void validate(const StepControls& c) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be positive and finite");
  };
  positive(c.t_end, "t_end");
  positive(c.dt_init, "dt_init");
  positive(c.dt_min, "dt_min");
  positive(c.rel_tol, "rel_tol");
  positive(c.s_max, "s_max");
  positive(c.tail_max, "tail_max");
  positive(c.sample_interval, "sample_interval");
  if (!(c.dt_min < c.dt_init)) throw std::invalid_argument("dt_min must be smaller than dt_init");
  if (!(c.dt_init <= c.t_end)) throw std::invalid_argument("dt_init must not exceed t_end");
  if (c.filter.enabled) {
    positive(c.filter.strength, "filter.strength");
    if (c.filter.order < 2 || c.filter.order % 2 != 0) throw std::invalid_argument("filter.order must be an even integer >= 2");
  }
}

std::string_view to_string(Termination termination) {
  switch (termination) {
    case Termination::Completed: return "Completed";
    case Termination::BreakingDetected: return "BreakingDetected";
    case Termination::ResolutionLost: return "ResolutionLost";
    case Termination::StepUnderflow: return "StepUnderflow";
  }
  return "Unknown";
}

Rk4Stepper::Rk4Stepper(Grid grid, Params params, ModelOptions options)
    : rhs_(grid, params, options), exec_(options.exec) {
  const auto n = static_cast<std::size_t>(grid.n());
  for (auto* v : {&k1_, &k2_, &k3_, &k4_, &tmp_}) v->resize(n);
}

void Rk4Stepper::step(std::span<const double> u, double t, double dt, std::span<double> out) {
  try {
    rhs_.nonlocal(u, k1_);
    kernels::axpy(exec_, u, 0.5 * dt, k1_, tmp_);
    rhs_.nonlocal(tmp_, k2_);
    kernels::axpy(exec_, u, 0.5 * dt, k2_, tmp_);
    rhs_.nonlocal(tmp_, k3_);
    kernels::axpy(exec_, u, dt, k3_, tmp_);
    rhs_.nonlocal(tmp_, k4_);
  } catch (const NumericalOverflow& e) {
    throw NumericalOverflow(std::string(e.what()) + " (t=" + std::to_string(t) + ", dt=" + std::to_string(dt) + ")");
  }
  kernels::rk4_combine(exec_, u, k1_, k2_, k3_, k4_, dt, out);
  for (double v : out)
    if (!std::isfinite(v))
      throw NumericalOverflow("rk4 step: non-finite result (t=" + std::to_string(t) + ", dt=" + std::to_string(dt) + ")");
}

State step_rk4(const State& state, double dt, const Params& params, const ModelOptions& options) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("step_rk4: dt must be positive and finite");
  Rk4Stepper stepper(state.u.grid(), params, options);
  std::vector<double> out(static_cast<std::size_t>(state.u.size()));
  stepper.step(state.u.values(), state.t, dt, out);
  return State{RealField(state.u.grid(), std::move(out)), state.t + dt};
}

namespace {

// Slope and resolution monitor evaluated after every accepted step.
class Monitor {
 public:
  Monitor(const Grid& grid, int cutoff)
      : grid_(grid), cutoff_(cutoff), half_(static_cast<std::size_t>(grid.spectral_size())),
        ux_(static_cast<std::size_t>(grid.n())) {}

  void update(std::span<const double> u) {
    grid_.forward(u, half_);
    tail = tail_fraction(half_, cutoff_);
    for (int k = 0; k < grid_.spectral_size(); ++k)
      half_[static_cast<std::size_t>(k)] *= derivative_multiplier(k, 1, grid_.n());
    grid_.inverse(half_, ux_);
    slope = refined_max(ux_).value;
    max_ux = max_norm(ux_);
  }

  double tail = 0.0;
  double slope = 0.0;
  double max_ux = 0.0;

 private:
  Grid grid_;
  int cutoff_;
  std::vector<Complex> half_;
  std::vector<double> ux_;
};

// Stability cap for RK4 on the nonlocal form: transport at the highest
// wavenumber, the bounded nonlocal linear part, and the local stretching rate.
double stable_dt(std::span<const double> u, double max_ux, const Params& p, int n) {
  double transport = 0.0;
  for (double v : u) transport = std::max(transport, std::abs(1.0 + 3.5 * p.epsilon * v));
  const double rate = std::numbers::pi * n * transport + std::sqrt(12.0 / p.mu) + 3.5 * p.epsilon * max_ux;
  return 2.5 / rate;
}

void apply_filter(const Grid& grid, const FilterOptions& f, std::vector<double>& u) {
  std::vector<Complex> half(static_cast<std::size_t>(grid.spectral_size()));
  grid.forward(u, half);
  const double kmax = grid.n() / 2;
  for (int k = 0; k < grid.spectral_size(); ++k)
    half[static_cast<std::size_t>(k)] *= std::exp(-f.strength * std::pow(k / kmax, f.order));
  grid.inverse(half, u);
}

double diff_norm(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return std::sqrt(s / static_cast<double>(a.size()));
}

}  // namespace

RunResult integrate(const State& initial, const Params& params, const StepControls& controls,
                    const ModelOptions& options) {
  validate(params);
  validate(controls);
  const Grid grid = initial.u.grid();
  const int n = grid.n();
  const int cutoff = dealias_cutoff(n, options.dealias);
  const double t0 = initial.t;
  const double t_end = t0 + controls.t_end;

  RunResult result{initial, Termination::Completed, t0, {}, {}};
  result.diagnostics.push_back(make_record(initial, params.mu, cutoff));
  if (result.diagnostics.front().tail_fraction > controls.tail_max)
    throw std::invalid_argument("initial tail fraction " + std::to_string(result.diagnostics.front().tail_fraction) +
                                " exceeds tail_max");

  // Sample k sits at t0 + k * interval; the final sample is pinned to t_end.
  auto sample_time = [&](long k) {
    const double ts = t0 + static_cast<double>(k) * controls.sample_interval;
    return ts >= t_end - 1e-9 * controls.sample_interval ? t_end : ts;
  };

  Rk4Stepper stepper(grid, params, options);
  Monitor monitor(grid, cutoff);
  std::vector<double> u(initial.u.values().begin(), initial.u.values().end());
  std::vector<double> full(u.size()), mid(u.size()), fine(u.size());
  monitor.update(u);

  double t = t0;
  double dt = controls.dt_init;
  long k = 1;
  double next_sample = sample_time(k);
  RunStats& stats = result.stats;

  for (;;) {
    const double remaining = next_sample - t;
    double h = std::min(dt, stable_dt(u, monitor.max_ux, params, n));
    bool lands = false;
    if (h >= remaining) {
      h = remaining;
      lands = true;
    }
    const bool clipped = h < dt;

    try {
      stepper.step(u, t, h, full);
      stepper.step(u, t, 0.5 * h, mid);
      stepper.step(mid, t + 0.5 * h, 0.5 * h, fine);
    } catch (const NumericalOverflow&) {
      ++stats.overflow_retries;
      dt = 0.5 * h;
      if (dt < controls.dt_min) {
        result.termination = Termination::ResolutionLost;
        break;
      }
      continue;
    }

    const double err = diff_norm(full, fine);
    const double tol = controls.rel_tol * l2_norm(fine);
    if (err > tol) {
      ++stats.rejected;
      dt = 0.5 * h;
      if (dt < controls.dt_min) {
        result.termination = Termination::StepUnderflow;
        break;
      }
      continue;
    }

    ++stats.accepted;
    stats.last_dt = h;
    u.swap(fine);
    t = lands ? next_sample : t + h;
    if (controls.filter.enabled) apply_filter(grid, controls.filter, u);
    if (!clipped && err < 0.1 * tol) dt = std::min(1.5 * dt, controls.t_end);
    monitor.update(u);

    if (lands) {
      result.diagnostics.push_back(make_record(State{RealField(grid, u), t}, params.mu, cutoff));
      if (t >= t_end) {
        result.termination = Termination::Completed;
        break;
      }
      next_sample = sample_time(++k);
    }
    if (monitor.slope > controls.s_max) {
      result.termination = Termination::BreakingDetected;
      break;
    }
    if (monitor.tail > controls.tail_max) {
      result.termination = Termination::ResolutionLost;
      break;
    }
  }

  result.final_state = State{RealField(grid, u), t};
  result.t_stop = t;
  if (result.diagnostics.back().t < t) result.diagnostics.push_back(make_record(result.final_state, params.mu, cutoff));
  return result;
}

}  // namespace mswave
