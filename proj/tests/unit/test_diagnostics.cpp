#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "generators.hpp"
#include "mswave/diagnostics.hpp"

using namespace mswave;
using mswave::testing::Gen;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPi = std::numbers::pi;

State field_state(int n, auto f) { return {RealField::sample(make_grid(n), f), 0.0}; }

// Second, independently written evaluation of the breaking threshold.
double threshold_oracle(double e, double mu, double c0, double n2, double ninf) {
  const double q = 13.0 / mu;
  double terms[] = {
      2.0 * n2 * std::pow(c0, 0.5),
      5.0 / 2.0 * e * ninf * c0,
      1.0 / 8.0 * std::pow(e, 2) * ninf * std::pow(q, 0.5) * std::pow(c0, 1.5),
      3.0 / 64.0 * std::pow(e, 3) * ninf * q * std::pow(c0, 2),
      7.0 / 4.0 * e * ninf * c0,
      2.0 * std::pow(q, 0.5) * std::pow(c0, 0.5),
      5.0 / 2.0 * e * q * c0,
      1.0 / 8.0 * std::pow(e, 2) * std::pow(q, 1.5) * std::pow(c0, 1.5),
      3.0 / 64.0 * std::pow(e, 3) * std::pow(q, 2) * std::pow(c0, 2),
  };
  double s = 0.0;
  for (double t : terms) s += t;
  return s * 12.0 / (mu * e);
}

}  // namespace

TEST_SUITE("diagnostics") {
  TEST_CASE("energy_E examples") {
    CHECK(energy_E(State{RealField::zeros(make_grid(16)), 0.0}, 1.0) == 0.0);
    CHECK(energy_E(field_state(16, [](double) { return 0.6; }), 5.0) == doctest::Approx(0.18).epsilon(1e-15));
    const double e = energy_E(field_state(64, [](double x) { return std::cos(kTwoPi * x); }), 12.0);
    CHECK(e == doctest::Approx(0.25 * (1.0 + 4.0 * kPi * kPi)).epsilon(1e-14));
    CHECK(e == doctest::Approx(10.1196).epsilon(1e-5));
  }

  TEST_CASE("functional_H examples") {
    CHECK(functional_H(State{RealField::zeros(make_grid(16)), 0.0}, 1.0) == 0.0);
    CHECK(functional_H(field_state(16, [](double) { return -0.6; }), 5.0) == doctest::Approx(0.18).epsilon(1e-15));
    const double h = functional_H(field_state(64, [](double x) { return std::cos(kTwoPi * x); }), 12.0);
    CHECK(h == doctest::Approx(0.25 + 2.0 * kPi * kPi + 4.0 * std::pow(kPi, 4)).epsilon(1e-14));
  }

  TEST_CASE("property: Parseval quadratures match trapezoid oracles") {
    Gen gen(41);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = 2 * gen.integer(16, 128);
      const Grid g = make_grid(n);
      const double mu = gen.uniform(0.1, 12.0);
      const auto t = gen.terms(6, 1.0);
      const auto s = State{RealField::sample(g, [&](double x) { return Gen::eval(t, x); }), 0.0};
      double e = 0.0;
      for (int j = 0; j < n; ++j) {
        const double u = Gen::eval(t, g.node(j));
        const double ux = Gen::eval_dx(t, g.node(j));
        e += 0.5 * (u * u + (mu / 12.0) * ux * ux);
      }
      e /= n;
      CHECK(energy_E(s, mu) == doctest::Approx(e).epsilon(1e-12));
      CHECK(c0_energy(s.u, mu) == 2.0 * energy_E(s, mu));
      CHECK(sobolev_norm(s, 0.0) == doctest::Approx(l2_norm(s.u.values())).epsilon(1e-12));
    }
  }

  TEST_CASE("sobolev_norm") {
    CHECK(sobolev_norm(State{RealField::zeros(make_grid(16)), 0.0}, 2.0) == 0.0);
    const auto s = field_state(64, [](double x) { return std::sin(kTwoPi * x); });
    CHECK(sobolev_norm(s, 0.0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(sobolev_norm(s, 1.0) == doctest::Approx(std::sqrt((1.0 + 4.0 * kPi * kPi) / 2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(sobolev_norm(s, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(sobolev_norm(s, 4.5), std::invalid_argument);
    CHECK_NOTHROW(sobolev_norm(s, 4.0));
  }

  TEST_CASE("slope_sup examples") {
    const auto s = slope_sup(field_state(256, [](double x) { return std::sin(kTwoPi * x); }));
    CHECK(std::abs(s.value - kTwoPi) <= 1e-8);
    CHECK(std::abs(s.location) <= 1e-8);
    const auto c = slope_sup(field_state(64, [](double) { return 1.7; }));
    CHECK(c.value == 0.0);
    CHECK(c.location == 0.0);

    const auto two = slope_sup(field_state(256, [](double x) { return std::sin(kTwoPi * x) + 0.5 * std::sin(2 * kTwoPi * x); }));
    double dense = -INFINITY;
    for (int i = 0; i < 100000; ++i) {
      const double x = i / 1e5;
      dense = std::max(dense, kTwoPi * std::cos(kTwoPi * x) + kTwoPi * std::cos(2 * kTwoPi * x));
    }
    CHECK(std::abs(two.value - dense) <= 1e-6);
  }

  TEST_CASE("property: slope_sup matches dense sampling of the analytic slope") {
    Gen gen(42);
    for (int trial = 0; trial < 20; ++trial) {
      const auto t = gen.terms(4, 1.0);
      const auto s = slope_sup(State{RealField::sample(make_grid(1024), [&](double x) { return Gen::eval(t, x); }), 0.0});
      double dense = -INFINITY;
      for (int i = 0; i < 100000; ++i) dense = std::max(dense, Gen::eval_dx(t, i / 1e5));
      CHECK(std::abs(s.value - dense) <= 1e-6 * std::max(1.0, std::abs(dense)));
      CHECK(s.location >= 0.0);
      CHECK(s.location < 1.0);
    }
  }

  TEST_CASE("amplitude_bound and c0") {
    CHECK(amplitude_bound(0.0, 2.0) == 0.0);
    CHECK(amplitude_bound(1.0, 13.0) == 1.0);
    CHECK(c0_energy(RealField::zeros(make_grid(16)), 1.0) == 0.0);
    const auto u = RealField::sample(make_grid(64), [](double x) { return std::cos(kTwoPi * x); });
    CHECK(c0_energy(u, 12.0) == doctest::Approx(0.5 * (1.0 + 4.0 * kPi * kPi)).epsilon(1e-14));
  }

  TEST_CASE("breaking_threshold") {
    const auto norms = kernel_norms(1.0, make_grid(256));
    const Params p{0.1, 1.0};
    CHECK(breaking_threshold(p, 0.0, norms, NormsSource::Numeric) == 0.0);
    const double v = breaking_threshold(p, 1.0, norms, NormsSource::Numeric);
    CHECK(v == doctest::Approx(threshold_oracle(0.1, 1.0, 1.0, norms.n2_numeric, norms.ninf_numeric)).epsilon(1e-12));
    const double vp = breaking_threshold(p, 1.0, norms, NormsSource::Paper);
    CHECK(vp == doctest::Approx(threshold_oracle(0.1, 1.0, 1.0, norms.n2_paper, norms.ninf_paper)).epsilon(1e-12));
    CHECK(breaking_threshold(Params{0.05, 1.0}, 1.0, norms, NormsSource::Numeric) / v > 1.5);
    CHECK_THROWS_AS(breaking_threshold(p, -1.0, norms, NormsSource::Numeric), std::invalid_argument);

    double prev = 0.0;
    for (double c0 = 0.01; c0 <= 10.0; c0 *= 1.3) {
      const double t = breaking_threshold(p, c0, norms, NormsSource::Numeric);
      CHECK(t > prev);
      prev = t;
    }
  }

  TEST_CASE("breaking_report") {
    const Params p{0.1, 1.0};
    const Grid g = make_grid(256);
    const auto norms = kernel_norms(p.mu, g);
    const double a = 0.5;
    const auto u0 = RealField::sample(g, [&](double x) { return a * std::sin(kTwoPi * x); });
    const auto r = breaking_report(u0, p, norms, NormsSource::Numeric);
    CHECK(r.s0 == doctest::Approx(kTwoPi * a).epsilon(1e-12));
    CHECK(r.t_upper == doctest::Approx(2.0 / (3.0 * kPi * p.epsilon * a)).epsilon(1e-12));
    CHECK(r.t_upper / r.t_lower == doctest::Approx(11.0 / 3.0).epsilon(1e-15));
    CHECK(r.criterion_satisfied == (r.inf_slope_sq > r.threshold));
    CHECK(r.inf_slope_sq == doctest::Approx(kTwoPi * kTwoPi * a * a).epsilon(1e-12));
    CHECK(r.c0 == doctest::Approx(c0_energy(u0, p.mu)));
    CHECK(r.norms_source == NormsSource::Numeric);
    CHECK_FALSE(r.criterion_satisfied);

    CHECK_THROWS_AS(breaking_report(RealField::zeros(g), p, norms, NormsSource::Numeric), std::invalid_argument);
    CHECK_THROWS_AS(breaking_report(RealField::sample(g, [](double) { return 2.0; }), p, norms, NormsSource::Numeric),
                    std::invalid_argument);
  }

  TEST_CASE("property: report invariants hold for random profiles") {
    Gen gen(43);
    const Grid g = make_grid(128);
    for (int trial = 0; trial < 20; ++trial) {
      const Params p{gen.uniform(0.01, 1.0), gen.uniform(0.1, 10.0)};
      const auto norms = kernel_norms(p.mu, g);
      const auto u0 = gen.smooth_field(g, 5, gen.uniform(0.01, 5.0));
      const auto r = breaking_report(u0, p, norms, gen.integer(0, 1) ? NormsSource::Paper : NormsSource::Numeric);
      CHECK(r.t_lower < r.t_upper);
      CHECK(r.t_upper / r.t_lower == doctest::Approx(11.0 / 3.0).epsilon(1e-14));
      CHECK(r.criterion_satisfied == (r.inf_slope_sq > r.threshold));
      CHECK(r.s0 > 0.0);
    }
  }

  TEST_CASE("envelopes") {
    const double s0 = 2.0;
    const double e = 0.1;
    CHECK(envelope_bounds(s0, e, 0.0) == std::pair{s0, s0});
    const double t = 0.5 * 4.0 / (11.0 * e * s0);
    const auto [slow, fast] = envelope_bounds(s0, e, t);
    CHECK(slow <= fast);
    CHECK(slow == doctest::Approx(s0 / (1.0 - 0.75 * e * s0 * t)));
    CHECK(fast == doctest::Approx(2.0 * s0));
    CHECK_THROWS_WITH_AS(fast_envelope(s0, e, 4.0 / (11.0 * e * s0)), doctest::Contains("fast"), std::domain_error);
    CHECK_THROWS_WITH_AS(slow_envelope(s0, e, 4.0 / (3.0 * e * s0)), doctest::Contains("slow"), std::domain_error);
    CHECK_THROWS_WITH_AS(envelope_bounds(s0, e, 1.0 / (e * s0)), doctest::Contains("fast"), std::domain_error);
    CHECK(std::isfinite(slow_envelope(s0, e, 0.999 * 4.0 / (3.0 * e * s0))));
  }

  TEST_CASE("make_record") {
    const auto s = State{RealField::sample(make_grid(64), [](double x) { return 0.2 + std::sin(kTwoPi * x); }), 1.5};
    const auto r = make_record(s, 2.0, dealias_cutoff(64, Dealias::TwoThirds));
    CHECK(r.t == 1.5);
    CHECK(r.energy_e == doctest::Approx(energy_E(s, 2.0)).epsilon(1e-15));
    CHECK(r.functional_h == doctest::Approx(functional_H(s, 2.0)).epsilon(1e-15));
    CHECK(r.slope_sup == doctest::Approx(kTwoPi).epsilon(1e-12));
    CHECK(r.min_ux == doctest::Approx(-kTwoPi).epsilon(1e-12));
    CHECK(r.mean_u == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(r.max_abs_u == doctest::Approx(1.2).epsilon(1e-3));
    CHECK(r.tail_fraction >= 0.0);
    CHECK(r.tail_fraction <= 1e-20);
  }

  TEST_CASE("norms source names") {
    CHECK(to_string(NormsSource::Numeric) == "numeric");
    CHECK(parse_norms_source("paper") == NormsSource::Paper);
    CHECK_THROWS_AS(parse_norms_source("closed"), std::invalid_argument);
  }
}
