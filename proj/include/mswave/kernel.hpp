#pragma once

#include "mswave/spectral_grid.hpp"

namespace mswave {

/// L1, L2 and Linf norms of the periodic Green's function P of
/// (1 - (mu/12) d^2/dx^2) on [0,1]. The *_paper members evaluate the
/// closed-form expressions; the *_numeric members come from quadrature on the
/// Fourier-synthesized kernel. The two sets are reported side by side and are
/// never reconciled: the closed-form L1 value mu/3 disagrees with the exact
/// value 1 for every mu != 3.
struct KernelNorms {
  double mu = 0.0;
  double n1_paper = 0.0;
  double n2_paper = 0.0;
  double ninf_paper = 0.0;
  double n1_numeric = 0.0;
  double n2_numeric = 0.0;
  double ninf_numeric = 0.0;
  /// max_j |P_closed(x_j) - P_synth(x_j)| on the quadrature grid.
  double closed_form_max_discrepancy = 0.0;
};

/// Closed-form norms (numeric members left at zero).
KernelNorms closed_form_norms(double mu);

/// Exact Fourier coefficient of P at wavenumber k.
inline double kernel_coefficient(int k, double mu) { return helmholtz_multiplier(k, mu); }

/// Nodal samples of P obtained by Fourier synthesis over all integer
/// wavenumbers. Modes outside the grid band are folded onto it (Poisson
/// summation), so the samples are exact point values rather than the
/// band-limited interpolant.
RealField kernel_values(double mu, const Grid& grid);

/// Closed-form periodic kernel evaluated at x (any real).
double kernel_closed_form(double mu, double x);

/// Closed-form and quadrature norms. Quadrature runs on max(n, 1024) and its
/// refinement with one Richardson step; the sup norm is the nodal maximum
/// with three-point parabolic refinement.
KernelNorms kernel_norms(double mu, const Grid& grid);

/// P * h for a band-limited h, computed by the kernel's Fourier multiplier.
RealField convolve_with_kernel(double mu, const RealField& h);

/// max over h in {1, sin 2 pi x, cos 4 pi x} of |(1 - (mu/12) d^2)(P * h) - h|.
double residual_helmholtz_kernel(double mu, const Grid& grid);

}  // namespace mswave
