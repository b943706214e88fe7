#include "mswave/parallel_kernels.hpp"

#include <omp.h>

#include <cstddef>

namespace mswave::kernels {

namespace {

// Below this many points the fork/join cost dominates.
constexpr std::ptrdiff_t kParallelThreshold = 2048;

inline void nonlocal_point(double u, double ux, const NonlocalCoefficients& c, double& transport, double& g) {
  const double u2 = u * u;
  transport = c.transport * u * ux;
  g = c.b2 * u2 + c.b3 * u2 * u + c.b4 * u2 * u2 + c.bx * ux * ux;
}

inline double direct_point(double u, double ux, double uxx, double uxxx, const DirectCoefficients& c) {
  const double u2 = u * u;
  return c.c1 * u * ux + c.c2 * u2 * ux + c.c3 * u2 * u * ux + c.c4 * (u * uxxx + 2.0 * ux * uxx);
}

inline double rk4_point(double u, double k1, double k2, double k3, double k4, double dt) {
  return u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

std::ptrdiff_t len(std::size_t n) { return static_cast<std::ptrdiff_t>(n); }

}  // namespace

namespace serial {

void nonlocal_products(std::span<const double> u, std::span<const double> ux, const NonlocalCoefficients& c,
                       std::span<double> transport, std::span<double> g_nl) {
  for (std::size_t j = 0; j < u.size(); ++j) nonlocal_point(u[j], ux[j], c, transport[j], g_nl[j]);
}

void direct_products(std::span<const double> u, std::span<const double> ux, std::span<const double> uxx,
                     std::span<const double> uxxx, const DirectCoefficients& c, std::span<double> out) {
  for (std::size_t j = 0; j < u.size(); ++j) out[j] = direct_point(u[j], ux[j], uxx[j], uxxx[j], c);
}

void multiply_spectrum(std::span<const Complex> in, std::span<const Complex> multiplier, std::span<Complex> out) {
  for (std::size_t k = 0; k < in.size(); ++k) out[k] = in[k] * multiplier[k];
}

void axpy(std::span<const double> base, double a, std::span<const double> x, std::span<double> out) {
  for (std::size_t j = 0; j < base.size(); ++j) out[j] = base[j] + a * x[j];
}

void rk4_combine(std::span<const double> u, std::span<const double> k1, std::span<const double> k2,
                 std::span<const double> k3, std::span<const double> k4, double dt, std::span<double> out) {
  for (std::size_t j = 0; j < u.size(); ++j) out[j] = rk4_point(u[j], k1[j], k2[j], k3[j], k4[j], dt);
}

}  // namespace serial

namespace omp {

void nonlocal_products(std::span<const double> u, std::span<const double> ux, const NonlocalCoefficients& c,
                       std::span<double> transport, std::span<double> g_nl) {
  const std::ptrdiff_t n = len(u.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t j = 0; j < n; ++j) nonlocal_point(u[j], ux[j], c, transport[j], g_nl[j]);
}

void direct_products(std::span<const double> u, std::span<const double> ux, std::span<const double> uxx,
                     std::span<const double> uxxx, const DirectCoefficients& c, std::span<double> out) {
  const std::ptrdiff_t n = len(u.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t j = 0; j < n; ++j) out[j] = direct_point(u[j], ux[j], uxx[j], uxxx[j], c);
}

void multiply_spectrum(std::span<const Complex> in, std::span<const Complex> multiplier, std::span<Complex> out) {
  const std::ptrdiff_t n = len(in.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t k = 0; k < n; ++k) out[k] = in[k] * multiplier[k];
}

void axpy(std::span<const double> base, double a, std::span<const double> x, std::span<double> out) {
  const std::ptrdiff_t n = len(base.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t j = 0; j < n; ++j) out[j] = base[j] + a * x[j];
}

void rk4_combine(std::span<const double> u, std::span<const double> k1, std::span<const double> k2,
                 std::span<const double> k3, std::span<const double> k4, double dt, std::span<double> out) {
  const std::ptrdiff_t n = len(u.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t j = 0; j < n; ++j) out[j] = rk4_point(u[j], k1[j], k2[j], k3[j], k4[j], dt);
}

}  // namespace omp

void nonlocal_products(Exec e, std::span<const double> u, std::span<const double> ux, const NonlocalCoefficients& c,
                       std::span<double> transport, std::span<double> g_nl) {
  if (e == Exec::Parallel)
    omp::nonlocal_products(u, ux, c, transport, g_nl);
  else
    serial::nonlocal_products(u, ux, c, transport, g_nl);
}

void direct_products(Exec e, std::span<const double> u, std::span<const double> ux, std::span<const double> uxx,
                     std::span<const double> uxxx, const DirectCoefficients& c, std::span<double> out) {
  if (e == Exec::Parallel)
    omp::direct_products(u, ux, uxx, uxxx, c, out);
  else
    serial::direct_products(u, ux, uxx, uxxx, c, out);
}

void multiply_spectrum(Exec e, std::span<const Complex> in, std::span<const Complex> multiplier,
                       std::span<Complex> out) {
  if (e == Exec::Parallel)
    omp::multiply_spectrum(in, multiplier, out);
  else
    serial::multiply_spectrum(in, multiplier, out);
}

void axpy(Exec e, std::span<const double> base, double a, std::span<const double> x, std::span<double> out) {
  if (e == Exec::Parallel)
    omp::axpy(base, a, x, out);
  else
    serial::axpy(base, a, x, out);
}

void rk4_combine(Exec e, std::span<const double> u, std::span<const double> k1, std::span<const double> k2,
                 std::span<const double> k3, std::span<const double> k4, double dt, std::span<double> out) {
  if (e == Exec::Parallel)
    omp::rk4_combine(u, k1, k2, k3, k4, dt, out);
  else
    serial::rk4_combine(u, k1, k2, k3, k4, dt, out);
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace mswave::kernels
