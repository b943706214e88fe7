#include "mswave/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace mswave {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_positive_mu(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("mu must be positive and finite");
}

// Sum of the kernel multiplier over the alias class k + m n, m in Z.
// |m| <= M is summed directly; the two tails use the midpoint-rule integral
// plus its first Euler-Maclaurin correction.
double folded_coefficient(int k, int n, double mu) {
  constexpr int M = 256;
  const double c = (mu / 12.0) * kTwoPi * kTwoPi;
  const double sc = std::sqrt(c);
  auto term = [&](double s) {
    const double w = k + s * n;
    return 1.0 / (1.0 + c * w * w);
  };
  auto slope = [&](double s) {
    const double w = k + s * n;
    const double d = 1.0 + c * w * w;
    return -2.0 * c * n * w / (d * d);
  };
  // Sum from the outside in so the small terms accumulate first.
  double sum = 0.0;
  for (int m = M; m >= 1; --m) sum += term(m) + term(-m);
  sum += term(0);

  const double a = M + 0.5;
  const double upper = std::atan(1.0 / (sc * (k + a * n))) / (n * sc) + slope(a) / 24.0;
  const double lower = std::atan(1.0 / (sc * (a * n - k))) / (n * sc) - slope(-a) / 24.0;
  return sum + upper + lower;
}

double trapezoid(std::span<const double> v, int power) {
  double s = 0.0;
  for (double x : v) s += power == 1 ? std::abs(x) : x * x;
  return s / static_cast<double>(v.size());
}

}  // namespace

KernelNorms closed_form_norms(double mu) {
  require_positive_mu(mu);
  const double a = std::sqrt(3.0 / mu);
  // exp(-2a) scaling keeps the closed-form ratios finite for small mu.
  const double q = std::exp(-2.0 * a);
  KernelNorms out;
  out.mu = mu;
  out.n1_paper = mu / 3.0;
  const double ratio2 = (1.0 + 4.0 * a * q - q * q) / ((1.0 - q) * (1.0 - q));
  out.n2_paper = std::pow(3.0 / (4.0 * mu), 0.25) * std::sqrt(ratio2);
  out.ninf_paper = a * (1.0 + q) / (1.0 - q);
  return out;
}

RealField kernel_values(double mu, const Grid& grid) {
  require_positive_mu(mu);
  const int n = grid.n();
  std::vector<Complex> half(static_cast<std::size_t>(grid.spectral_size()));
  for (int k = 0; k < grid.spectral_size(); ++k) half[static_cast<std::size_t>(k)] = folded_coefficient(k, n, mu);
  std::vector<double> v(static_cast<std::size_t>(n));
  grid.inverse(half, v);
  return RealField(grid, std::move(v));
}

double kernel_closed_form(double mu, double x) {
  require_positive_mu(mu);
  const double a = std::sqrt(3.0 / mu);
  const double y = x - std::floor(x);
  // a (e^{2ay} + e^{2a(1-y)}) / (e^{2a} - 1), numerator and denominator scaled by e^{-2a}.
  return a * (std::exp(2.0 * a * (y - 1.0)) + std::exp(-2.0 * a * y)) / (1.0 - std::exp(-2.0 * a));
}

KernelNorms kernel_norms(double mu, const Grid& grid) {
  KernelNorms out = closed_form_norms(mu);
  const int nq = std::max(grid.n(), 1024);
  const Grid coarse = make_grid(nq);
  const Grid fine = make_grid(2 * nq);
  const RealField pc = kernel_values(mu, coarse);
  const RealField pf = kernel_values(mu, fine);

  // The kernel has a slope jump at x = 0, so the periodic trapezoid rule is
  // only second order; one Richardson step removes the h^2 term.
  auto richardson = [](double tc, double tf) { return (4.0 * tf - tc) / 3.0; };
  out.n1_numeric = richardson(trapezoid(pc.values(), 1), trapezoid(pf.values(), 1));
  out.n2_numeric = std::sqrt(richardson(trapezoid(pc.values(), 2), trapezoid(pf.values(), 2)));
  out.ninf_numeric = refined_max(pf.values()).value;

  double worst = 0.0;
  for (int j = 0; j < nq; ++j) worst = std::max(worst, std::abs(kernel_closed_form(mu, coarse.node(j)) - pc[j]));
  out.closed_form_max_discrepancy = worst;
  return out;
}

RealField convolve_with_kernel(double mu, const RealField& h) {
  require_positive_mu(mu);
  const Grid& g = h.grid();
  std::vector<Complex> half(static_cast<std::size_t>(g.spectral_size()));
  g.forward(h.values(), half);
  for (int k = 0; k < g.spectral_size(); ++k) half[static_cast<std::size_t>(k)] *= kernel_coefficient(k, mu);
  std::vector<double> v(static_cast<std::size_t>(g.n()));
  g.inverse(half, v);
  return RealField(g, std::move(v));
}

double residual_helmholtz_kernel(double mu, const Grid& grid) {
  require_positive_mu(mu);
  const RealField tests[] = {
      RealField::sample(grid, [](double) { return 1.0; }),
      RealField::sample(grid, [](double x) { return std::sin(kTwoPi * x); }),
      RealField::sample(grid, [](double x) { return std::cos(2.0 * kTwoPi * x); }),
  };
  double worst = 0.0;
  for (const RealField& h : tests) {
    const RealField ph = convolve_with_kernel(mu, h);
    const RealField ph_xx = derivative(ph, 2);
    for (int j = 0; j < grid.n(); ++j) {
      const double lhs = ph[j] - (mu / 12.0) * ph_xx[j];
      worst = std::max(worst, std::abs(lhs - h[j]));
    }
  }
  return worst;
}

}  // namespace mswave
