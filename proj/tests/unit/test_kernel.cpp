#include <doctest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "mswave/kernel.hpp"

using namespace mswave;
using mswave::testing::Gen;
using mswave::testing::max_abs_diff;

namespace {

const double kCoth1 = std::cosh(1.0) / std::sinh(1.0);

// ||P||_2^2 by Parseval over all integer modes, with an integral tail.
double l2_norm_squared_oracle(double mu) {
  const double c = (mu / 12.0) * 4.0 * std::numbers::pi * std::numbers::pi;
  constexpr long K = 200000;
  double s = 0.0;
  for (long k = K; k >= 1; --k) {
    const double d = 1.0 + c * static_cast<double>(k) * static_cast<double>(k);
    s += 2.0 / (d * d);
  }
  return 1.0 + s + 2.0 / (3.0 * c * c * std::pow(K + 0.5, 3));
}

}  // namespace

TEST_SUITE("kernel") {
  TEST_CASE("kernel_values: nodal mean is the aliased sum, and the coth(1) peak at mu = 3") {
    // Exact point samples have nodal mean sum_m hat P(m n), not the integral 1.
    for (double mu : {0.01, 0.1, 1.0, 3.0, 12.0, 100.0}) {
      const int n = 256;
      const double c = (mu / 12.0) * 4.0 * std::numbers::pi * std::numbers::pi;
      double alias = 1.0;
      for (long m = 1; m < 2000000; ++m) alias += 2.0 / (1.0 + c * double(m) * m * n * n);
      const double tail = 2.0 / (c * double(n) * n * 1999999.5);
      CHECK(std::abs(kernel_values(mu, make_grid(n)).mean() - (alias + tail)) <= 1e-10);
    }
    const auto p = kernel_values(3.0, make_grid(1024));
    CHECK(std::abs(p.max_abs() - kCoth1) <= 1e-6);
    CHECK(p[0] == doctest::Approx(kCoth1).epsilon(1e-9));
  }

  TEST_CASE("kernel_values is grid independent at shared nodes") {
    const auto coarse = kernel_values(3.0, make_grid(512));
    const auto fine = kernel_values(3.0, make_grid(1024));
    for (int j = 0; j < 512; ++j) CHECK(std::abs(coarse[j] - fine[2 * j]) <= 1e-8);
  }

  TEST_CASE("synthesized kernel matches the closed form") {
    for (double mu : {0.1, 1.0, 3.0, 12.0}) {
      const Grid g = make_grid(512);
      const auto p = kernel_values(mu, g);
      for (int j = 0; j < g.n(); ++j) CHECK(std::abs(p[j] - kernel_closed_form(mu, g.node(j))) <= 1e-9 * p.max_abs());
      CHECK(kernel_closed_form(mu, 0.3) == doctest::Approx(kernel_closed_form(mu, 1.3)).epsilon(1e-13));
      CHECK(kernel_closed_form(mu, 0.3) == doctest::Approx(kernel_closed_form(mu, 0.7)).epsilon(1e-13));
    }
  }

  TEST_CASE("kernel_norms at mu = 3") {
    const auto k = kernel_norms(3.0, make_grid(256));
    CHECK(k.ninf_paper == doctest::Approx(kCoth1).epsilon(1e-14));
    CHECK(std::abs(k.ninf_numeric - k.ninf_paper) <= 1e-6 * k.ninf_paper);
    CHECK(k.n1_paper == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(k.n1_numeric - 1.0) <= 1e-8);
    CHECK(std::abs(k.n2_numeric - std::sqrt(l2_norm_squared_oracle(3.0))) <= 1e-8);
    CHECK(k.n2_numeric == doctest::Approx(1.009).epsilon(1e-3));
    CHECK(k.closed_form_max_discrepancy <= 1e-9);
  }

  TEST_CASE("n1 from the closed form diverges from the quadrature away from mu = 3") {
    for (double mu : {0.1, 1.0, 12.0}) {
      const auto k = kernel_norms(mu, make_grid(256));
      CHECK(std::abs(k.n1_numeric - 1.0) <= 1e-8);
      CHECK(k.n1_paper == doctest::Approx(mu / 3.0));
      CHECK(std::abs(k.n1_paper - k.n1_numeric) > 0.5 * std::abs(mu / 3.0 - 1.0));
      CHECK(std::abs(k.n2_numeric - std::sqrt(l2_norm_squared_oracle(mu))) <= 1e-8);
      CHECK(std::abs(k.ninf_numeric - k.ninf_paper) <= 1e-6 * k.ninf_paper);
    }
  }

  TEST_CASE("all six norm values are positive and finite") {
    for (double mu : {0.05, 0.5, 5.0, 50.0}) {
      const auto k = kernel_norms(mu, make_grid(128));
      for (double v : {k.n1_paper, k.n2_paper, k.ninf_paper, k.n1_numeric, k.n2_numeric, k.ninf_numeric}) {
        CHECK(std::isfinite(v));
        CHECK(v > 0.0);
      }
    }
  }

  TEST_CASE("residual_helmholtz_kernel") {
    CHECK(residual_helmholtz_kernel(1.0, make_grid(256)) <= 1e-10);
    CHECK(residual_helmholtz_kernel(12.0, make_grid(256)) <= 1e-10);
    const double r64 = residual_helmholtz_kernel(0.1, make_grid(64));
    const double r512 = residual_helmholtz_kernel(0.1, make_grid(512));
    CHECK(std::abs(r64 - r512) <= 1e-10);
  }

  TEST_CASE("invalid mu is rejected") {
    const Grid g = make_grid(16);
    CHECK_THROWS_AS(kernel_values(0.0, g), std::invalid_argument);
    CHECK_THROWS_AS(kernel_norms(-1.0, g), std::invalid_argument);
    CHECK_THROWS_AS(residual_helmholtz_kernel(0.0, g), std::invalid_argument);
    CHECK_THROWS_AS(closed_form_norms(std::nan("")), std::invalid_argument);
  }

  TEST_CASE("property: convolution equals helmholtz_inverse") {
    Gen gen(21);
    for (int trial = 0; trial < 30; ++trial) {
      const Grid g = make_grid(2 * gen.integer(8, 128));
      const double mu = std::exp(gen.uniform(std::log(0.01), std::log(100.0)));
      const auto h = gen.smooth_field(g, 8, 1.0, gen.uniform(-1.0, 1.0));
      CHECK(max_abs_diff(convolve_with_kernel(mu, h), helmholtz_inverse(h, mu)) <= 1e-12);
    }
  }

  TEST_CASE("property: kernel is positive and symmetric") {
    Gen gen(22);
    for (int trial = 0; trial < 25; ++trial) {
      const double mu = std::exp(gen.uniform(std::log(0.01), std::log(100.0)));
      const Grid g = make_grid(256);
      const auto p = kernel_values(mu, g);
      for (int j = 0; j < g.n(); ++j) {
        CHECK(p[j] > 0.0);
        CHECK(std::abs(p[j] - p[(g.n() - j) % g.n()]) <= 1e-10);
      }
    }
  }

  TEST_CASE("property: ninf_paper grows without bound as mu shrinks") {
    double prev = INFINITY;
    for (double mu = 1e-4; mu <= 100.0; mu *= 1.5) {
      const double v = closed_form_norms(mu).ninf_paper;
      CHECK(v < prev);
      prev = v;
    }
    CHECK(closed_form_norms(1e-6).ninf_paper > 1e3);
  }
}
