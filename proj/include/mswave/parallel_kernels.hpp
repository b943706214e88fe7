#pragma once

// Pointwise inner loops of the solver. Every kernel has an OpenMP version
// (namespace omp) and a serial reference (namespace serial) with the same
// signature; tests require the two to agree bit for bit. Reductions are kept
// out of this layer so results never depend on the thread count.

#include <complex>
#include <span>

namespace mswave::kernels {

using Complex = std::complex<double>;

enum class Exec { Serial, Parallel };

/// Coefficients of the nonlocal (quasi-linear) form:
///   transport = a * u * u_x
///   g_nl      = b2 u^2 + b3 u^3 + b4 u^4 + bx u_x^2
struct NonlocalCoefficients {
  double transport;
  double b2, b3, b4, bx;
};

/// Coefficients of the nonlinear flux of the direct form:
///   c1 u u_x + c2 u^2 u_x + c3 u^3 u_x + c4 (u u_xxx + 2 u_x u_xx)
struct DirectCoefficients {
  double c1, c2, c3, c4;
};

namespace serial {
void nonlocal_products(std::span<const double> u, std::span<const double> ux, const NonlocalCoefficients& c,
                       std::span<double> transport, std::span<double> g_nl);
void direct_products(std::span<const double> u, std::span<const double> ux, std::span<const double> uxx,
                     std::span<const double> uxxx, const DirectCoefficients& c, std::span<double> out);
void multiply_spectrum(std::span<const Complex> in, std::span<const Complex> multiplier, std::span<Complex> out);
void axpy(std::span<const double> base, double a, std::span<const double> x, std::span<double> out);
void rk4_combine(std::span<const double> u, std::span<const double> k1, std::span<const double> k2,
                 std::span<const double> k3, std::span<const double> k4, double dt, std::span<double> out);
}  // namespace serial

namespace omp {
void nonlocal_products(std::span<const double> u, std::span<const double> ux, const NonlocalCoefficients& c,
                       std::span<double> transport, std::span<double> g_nl);
void direct_products(std::span<const double> u, std::span<const double> ux, std::span<const double> uxx,
                     std::span<const double> uxxx, const DirectCoefficients& c, std::span<double> out);
void multiply_spectrum(std::span<const Complex> in, std::span<const Complex> multiplier, std::span<Complex> out);
void axpy(std::span<const double> base, double a, std::span<const double> x, std::span<double> out);
void rk4_combine(std::span<const double> u, std::span<const double> k1, std::span<const double> k2,
                 std::span<const double> k3, std::span<const double> k4, double dt, std::span<double> out);
}  // namespace omp

// Dispatch on an execution policy.
void nonlocal_products(Exec e, std::span<const double> u, std::span<const double> ux, const NonlocalCoefficients& c,
                       std::span<double> transport, std::span<double> g_nl);
void direct_products(Exec e, std::span<const double> u, std::span<const double> ux, std::span<const double> uxx,
                     std::span<const double> uxxx, const DirectCoefficients& c, std::span<double> out);
void multiply_spectrum(Exec e, std::span<const Complex> in, std::span<const Complex> multiplier,
                       std::span<Complex> out);
void axpy(Exec e, std::span<const double> base, double a, std::span<const double> x, std::span<double> out);
void rk4_combine(Exec e, std::span<const double> u, std::span<const double> k1, std::span<const double> k2,
                 std::span<const double> k3, std::span<const double> k4, double dt, std::span<double> out);

/// Number of OpenMP threads the parallel kernels will use.
int max_threads();

}  // namespace mswave::kernels
