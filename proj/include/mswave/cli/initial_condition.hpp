#pragma once

#include "mswave/cli/config.hpp"
#include "mswave/spectral_grid.hpp"

namespace mswave::cli {

/// Samples the configured initial profile on a grid of config.n nodes.
///   sine:      amplitude sin(2 pi mode x)
///   multisine: sum of c cos(2 pi m x) + s sin(2 pi m x) over ic.coefficients
///   bump:      amplitude sum_{m=-3..3} exp(-((x - 0.5 + m)/width)^2), mean removed
///   fourier:   ic.coefficients if given, otherwise modes 1..mode with
///              amplitudes amplitude * U(-1,1) / m^2 drawn from seed
RealField make_initial_condition(const RunConfig& config);

/// Coefficient triples used by the fourier kind for this seed.
std::vector<FourierTerm> random_fourier_terms(int modes, double amplitude, std::uint64_t seed);

}  // namespace mswave::cli
