#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "mswave/parallel_kernels.hpp"
#include "mswave/spectral_grid.hpp"

namespace mswave {

/// Amplitude (epsilon) and shallowness (mu) parameters.
struct Params {
  double epsilon = 0.1;
  double mu = 1.0;
};

/// Throws std::invalid_argument unless both parameters are positive and finite.
void validate(const Params& params);

struct State {
  RealField u;
  double t = 0.0;
};

/// Raised when a right-hand side or step produces a non-finite value.
class NumericalOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Dealias {
  TwoThirds,  ///< truncate |k| > n/3 after each nonlinear product
  Pad52,      ///< evaluate products on a 5/2-padded grid (exact up to quartic terms)
};

struct ModelOptions {
  Dealias dealias = Dealias::TwoThirds;
  kernels::Exec exec = kernels::Exec::Parallel;
};

/// Largest wavenumber kept after a nonlinear product.
int dealias_cutoff(int n, Dealias mode);

/// Evaluates both right-hand-side forms on one grid. Holds its own scratch
/// buffers, so an instance must not be shared between threads; create one
/// per worker instead.
///
/// Nonlocal form:  u_t = u_x + (7/2) eps u u_x - d/dx (1 - (mu/12) d^2)^{-1} g(u)
///   g(u) = 2u + (5/2) eps u^2 - (1/8) eps^2 u^3 + (3/64) eps^3 u^4 - (7/48) eps mu u_x^2
/// Direct form:    (1 - (mu/12) d^2) u_t = -[u_x + (3/2) eps u u_x - (3/8) eps^2 u^2 u_x
///                   + (3/16) eps^3 u^3 u_x + (mu/12) u_xxx + (7/24) eps mu (u u_xxx + 2 u_x u_xx)]
///
/// Only nonlinear products are dealiased; linear terms act on every mode.
class RhsEvaluator {
 public:
  RhsEvaluator(Grid grid, Params params, ModelOptions options = {});

  const Grid& grid() const noexcept { return grid_; }
  const Params& params() const noexcept { return params_; }
  const ModelOptions& options() const noexcept { return options_; }

  void nonlocal(std::span<const double> u, std::span<double> out);
  void direct(std::span<const double> u, std::span<double> out);
  void g(std::span<const double> u, std::span<double> out);
  void f(std::span<const double> u, std::span<double> out);

 private:
  using CVec = std::vector<Complex>;

  // Spectrum of g(u) on the base grid; u_hat_ must already hold FFT(u).
  void g_spectrum(CVec& g_hat);
  // Brings base-grid coefficients to physical values on the product grid.
  void to_product_grid(const CVec& coeffs, std::vector<double>& values);
  // Transforms product-grid values back and truncates to the retained band.
  void from_product_grid(const std::vector<double>& values, CVec& coeffs);
  void check_finite(std::span<const double> v, const char* what) const;

  Grid grid_;
  Grid product_grid_;
  Params params_;
  ModelOptions options_;
  int cutoff_;

  CVec d1_, d2_, d3_;   // derivative multipliers
  std::vector<double> helm_;

  CVec u_hat_, ux_hat_, uxx_hat_, uxxx_hat_, work_hat_, prod_hat_, pad_hat_;
  std::vector<double> u_p_, ux_p_, uxx_p_, uxxx_p_, prod_a_, prod_b_;
};

RealField g_of_u(const State& state, const Params& params, const ModelOptions& options = {});
RealField f_of_u(const State& state, const Params& params, const ModelOptions& options = {});
RealField rhs_nonlocal(const State& state, const Params& params, const ModelOptions& options = {});
RealField rhs_direct(const State& state, const Params& params, const ModelOptions& options = {});

/// max_x |d^2/dx^2 (P*g) - (12/mu)(P*g - g)| with g = g(u).
double identity_residual(const State& state, const Params& params, const ModelOptions& options = {});

}  // namespace mswave
