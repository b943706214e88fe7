#include <doctest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "mswave/timestepper.hpp"

using namespace mswave;
using mswave::testing::max_abs_diff;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

State sine(int n, double a, int mode = 1) {
  return {RealField::sample(make_grid(n), [&](double x) { return a * std::sin(kTwoPi * mode * x); }), 0.0};
}

StepControls controls(double t_end, double interval) {
  StepControls c;
  c.t_end = t_end;
  c.dt_init = std::min(1e-3, t_end);
  c.sample_interval = interval;
  return c;
}

State advance(State s, double t_end, int steps, const Params& p) {
  const double dt = t_end / steps;
  for (int i = 0; i < steps; ++i) s = step_rk4(s, dt, p);
  return s;
}

}  // namespace

TEST_SUITE("timestepper") {
  TEST_CASE("step_rk4 keeps equilibria and advances time") {
    const State c{RealField::sample(make_grid(32), [](double) { return 0.3; }), 2.0};
    const State next = step_rk4(c, 0.1, Params{0.1, 1.0});
    CHECK(next.t == doctest::Approx(2.1));
    CHECK(max_abs_diff(next.u, c.u) <= 1e-15);
  }

  TEST_CASE("step_rk4 rejects non-positive dt") {
    const State s = sine(16, 0.1);
    CHECK_THROWS_AS(step_rk4(s, 0.0, Params{}), std::invalid_argument);
    CHECK_THROWS_AS(step_rk4(s, -1e-3, Params{}), std::invalid_argument);
    CHECK_THROWS_AS(step_rk4(s, std::nan(""), Params{}), std::invalid_argument);
  }

  TEST_CASE("step_rk4 reports overflow") {
    const State s = sine(32, 1e80);
    CHECK_THROWS_AS(step_rk4(s, 1.0, Params{1.0, 1.0}), NumericalOverflow);
  }

  TEST_CASE("fourth-order convergence: error ratio under dt halving is near 16") {
    const Params p{0.1, 1.0};
    // n = 32 keeps the fixed steps below the stability limit of the top modes.
    const State s = sine(32, 0.1);
    const double T = 0.5;
    const State a = advance(s, T, 32, p);
    const State b = advance(s, T, 64, p);
    const State c = advance(s, T, 128, p);
    const double ratio = max_abs_diff(a.u, b.u) / max_abs_diff(b.u, c.u);
    MESSAGE("ratio = " << ratio);
    CHECK(ratio >= 16.0 * 0.8);
    CHECK(ratio <= 16.0 * 1.2);
  }

  TEST_CASE("linear mode travels at the dispersion-relation speed") {
    const double mu = 1.0;
    const int k = 2;
    const Params p{1e-9, mu};
    const State s = sine(64, 1e-9, k);
    StepControls c = controls(1.0, 0.5);
    const RunResult r = integrate(s, p, c);
    REQUIRE(r.termination == Termination::Completed);
    const double speed = 1.0 - 2.0 * helmholtz_multiplier(k, mu);
    const auto exact = RealField::sample(make_grid(64), [&](double x) { return 1e-9 * std::sin(kTwoPi * k * (x + speed)); });
    CHECK(max_abs_diff(r.final_state.u, exact) <= 1e-6 * 1e-9);
  }

  TEST_CASE("smooth run completes and conserves energy") {
    const Params p{0.1, 1.0};
    const RunResult r = integrate(sine(256, 0.01), p, controls(2.0, 0.01));
    CHECK(r.termination == Termination::Completed);
    CHECK(r.t_stop == 2.0);
    CHECK(r.diagnostics.size() == 201);
    const double e0 = r.diagnostics.front().energy_e;
    for (const auto& d : r.diagnostics) CHECK(std::abs(d.energy_e - e0) / e0 <= 100 * 1e-10);
    for (std::size_t i = 1; i < r.diagnostics.size(); ++i) CHECK(r.diagnostics[i].t > r.diagnostics[i - 1].t);
    CHECK(r.diagnostics.back().t == r.t_stop);
    CHECK(r.stats.accepted > 0);
  }

  TEST_CASE("constant state completes unchanged") {
    const State c{RealField::sample(make_grid(64), [](double) { return 0.3; }), 0.0};
    const RunResult r = integrate(c, Params{0.1, 1.0}, controls(1.0, 0.1));
    CHECK(r.termination == Termination::Completed);
    CHECK(max_abs_diff(r.final_state.u, c.u) <= 1e-13);
  }

  TEST_CASE("runs are bit-identical, and serial equals parallel") {
    const Params p{0.3, 0.5};
    const State s = sine(4096, 0.2);
    const StepControls c = controls(0.01, 0.002);
    const RunResult a = integrate(s, p, c, {Dealias::TwoThirds, kernels::Exec::Parallel});
    const RunResult b = integrate(s, p, c, {Dealias::TwoThirds, kernels::Exec::Parallel});
    const RunResult d = integrate(s, p, c, {Dealias::TwoThirds, kernels::Exec::Serial});
    for (const RunResult* other : {&b, &d}) {
      CHECK(std::ranges::equal(a.final_state.u.values(), other->final_state.u.values()));
      REQUIRE(a.diagnostics.size() == other->diagnostics.size());
      for (std::size_t i = 0; i < a.diagnostics.size(); ++i) {
        CHECK(a.diagnostics[i].t == other->diagnostics[i].t);
        CHECK(a.diagnostics[i].slope_sup == other->diagnostics[i].slope_sup);
      }
    }
  }

  TEST_CASE("termination: breaking threshold") {
    StepControls c = controls(1.0, 0.1);
    c.s_max = 0.5;  // below S(0) = 0.2 pi, so the first accepted step trips it
    const RunResult r = integrate(sine(64, 0.1), Params{0.1, 1.0}, c);
    CHECK(r.termination == Termination::BreakingDetected);
    CHECK(r.t_stop < 1.0);
    CHECK(r.diagnostics.back().t == r.t_stop);
  }

  TEST_CASE("termination: resolution loss from the spectral tail") {
    StepControls c = controls(1.0, 0.1);
    c.tail_max = 1e-25;
    const RunResult r = integrate(sine(64, 0.5), Params{0.5, 1.0}, c);
    CHECK(r.termination == Termination::ResolutionLost);
    CHECK(r.diagnostics.back().tail_fraction > 1e-25);
  }

  TEST_CASE("termination: step underflow") {
    StepControls c = controls(1.0, 0.1);
    c.dt_init = 1e-2;
    c.dt_min = 4e-3;
    c.rel_tol = 1e-18;
    const RunResult r = integrate(sine(64, 0.5), Params{0.5, 1.0}, c);
    CHECK(r.termination == Termination::StepUnderflow);
    CHECK(r.stats.rejected >= 1);
  }

  TEST_CASE("overflow during a run ends as resolution loss at the last finite state") {
    StepControls c = controls(1.0, 0.5);
    c.dt_init = 0.5;
    c.dt_min = 0.2;
    c.rel_tol = 1e10;
    const RunResult r = integrate(sine(32, 1e100), Params{1.0, 1.0}, c);
    CHECK(r.termination == Termination::ResolutionLost);
    CHECK(r.t_stop == 0.0);
    CHECK(r.stats.overflow_retries >= 1);
  }

  TEST_CASE("invalid controls and unresolved initial data are rejected") {
    const State s = sine(64, 0.1);
    StepControls c = controls(1.0, 0.1);
    c.dt_min = 1e-2;
    c.dt_init = 1e-3;
    CHECK_THROWS_AS(integrate(s, Params{}, c), std::invalid_argument);
    c = controls(1.0, 0.1);
    c.dt_init = 2.0;
    CHECK_THROWS_AS(integrate(s, Params{}, c), std::invalid_argument);
    c = controls(1.0, 0.0);
    CHECK_THROWS_AS(integrate(s, Params{}, c), std::invalid_argument);

    std::vector<double> rough(64, 0.0);
    rough[10] = 1.0;
    c = controls(1.0, 0.1);
    CHECK_THROWS_WITH_AS(integrate(State{RealField(make_grid(64), rough), 0.0}, Params{}, c),
                         doctest::Contains("tail"), std::invalid_argument);
  }

  TEST_CASE("exponential filter damps the top of the spectrum") {
    StepControls c = controls(0.2, 0.1);
    c.tail_max = 1.0;
    const RunResult plain = integrate(sine(64, 0.5), Params{0.5, 1.0}, c);
    c.filter.enabled = true;
    const RunResult filtered = integrate(sine(64, 0.5), Params{0.5, 1.0}, c);
    CHECK(filtered.diagnostics.back().tail_fraction < plain.diagnostics.back().tail_fraction);
  }

  TEST_CASE("termination names") {
    CHECK(to_string(Termination::Completed) == "Completed");
    CHECK(to_string(Termination::BreakingDetected) == "BreakingDetected");
    CHECK(to_string(Termination::ResolutionLost) == "ResolutionLost");
    CHECK(to_string(Termination::StepUnderflow) == "StepUnderflow");
  }
}
