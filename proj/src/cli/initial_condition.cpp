#include "mswave/cli/initial_condition.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace mswave::cli {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

RealField from_terms(const Grid& grid, const std::vector<FourierTerm>& terms) {
  return RealField::sample(grid, [&](double x) {
    double v = 0.0;
    for (const auto& t : terms) v += t.cos_amp * std::cos(kTwoPi * t.mode * x) + t.sin_amp * std::sin(kTwoPi * t.mode * x);
    return v;
  });
}

}  // namespace

std::vector<FourierTerm> random_fourier_terms(int modes, double amplitude, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<FourierTerm> terms;
  for (int m = 1; m <= modes; ++m) {
    const double scale = amplitude / (static_cast<double>(m) * m);
    const double c = scale * unit(rng);
    const double s = scale * unit(rng);
    terms.push_back({m, c, s});
  }
  return terms;
}

RealField make_initial_condition(const RunConfig& config) {
  const Grid grid = make_grid(config.n);
  const InitialCondition& ic = config.ic;
  if (ic.kind == "sine")
    return RealField::sample(grid, [&](double x) { return ic.amplitude * std::sin(kTwoPi * ic.mode * x); });
  if (ic.kind == "multisine") return from_terms(grid, ic.coefficients);
  if (ic.kind == "fourier")
    return from_terms(grid, ic.coefficients.empty() ? random_fourier_terms(ic.mode, ic.amplitude, config.seed)
                                                    : ic.coefficients);
  if (ic.kind == "bump") {
    std::vector<double> v(static_cast<std::size_t>(grid.n()));
    for (int j = 0; j < grid.n(); ++j) {
      double s = 0.0;
      for (int m = -3; m <= 3; ++m) {
        const double z = (grid.node(j) - 0.5 + m) / ic.width;
        s += std::exp(-z * z);
      }
      v[static_cast<std::size_t>(j)] = ic.amplitude * s;
    }
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    for (double& x : v) x -= mean;
    return RealField(grid, std::move(v));
  }
  throw ConfigError("ic.kind: unsupported kind '" + ic.kind + "'");
}

}  // namespace mswave::cli
