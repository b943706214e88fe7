#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace mswave {

using Complex = std::complex<double>;

namespace detail {
struct FftPlans;
}

/// Uniform periodic grid on [0,1) with nodes x_j = j/n.
///
/// Wavenumbers live in (-n/2, n/2]. Transforms are real-to-complex and only
/// the non-negative half k = 0..n/2 is stored; negative modes follow from
/// conjugate symmetry. Coefficients are normalized so that
/// u_j = sum_k c_k exp(2 pi i k x_j).
///
/// A Grid is a cheap value type; copies share the same immutable FFT plans
/// and may be used concurrently from different threads.
class Grid {
 public:
  int n() const noexcept { return n_; }
  double spacing() const noexcept { return 1.0 / n_; }
  double node(int j) const noexcept { return static_cast<double>(j) / n_; }
  std::vector<double> nodes() const;

  int spectral_size() const noexcept { return n_ / 2 + 1; }
  int nyquist() const noexcept { return n_ / 2; }

  /// Wavenumber held at index idx of the full (length n) DFT layout.
  int wavenumber(int idx) const noexcept { return idx <= n_ / 2 ? idx : idx - n_; }
  /// All resolvable wavenumbers in ascending order, -n/2+1 .. n/2.
  std::vector<int> wavenumbers() const;

  void forward(std::span<const double> values, std::span<Complex> coeffs) const;
  void inverse(std::span<const Complex> coeffs, std::span<double> values) const;

  friend bool operator==(const Grid& a, const Grid& b) noexcept { return a.n_ == b.n_; }

 private:
  friend Grid make_grid(int n);
  Grid(int n, std::shared_ptr<const detail::FftPlans> plans);

  int n_;
  std::shared_ptr<const detail::FftPlans> plans_;
};

/// Throws std::invalid_argument unless n is even and >= 8.
Grid make_grid(int n);

/// Finite nodal samples of a period-1 function on a Grid.
class RealField {
 public:
  /// Throws std::invalid_argument on length mismatch or non-finite values.
  RealField(Grid grid, std::vector<double> values);

  static RealField zeros(const Grid& grid);

  template <class F>
  static RealField sample(const Grid& grid, F&& f) {
    std::vector<double> v(static_cast<std::size_t>(grid.n()));
    for (int j = 0; j < grid.n(); ++j) v[static_cast<std::size_t>(j)] = f(grid.node(j));
    return RealField(grid, std::move(v));
  }

  const Grid& grid() const noexcept { return grid_; }
  int size() const noexcept { return grid_.n(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](int j) const { return values_[static_cast<std::size_t>(j)]; }

  double mean() const;
  double max_abs() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Half spectrum (k = 0..n/2) of a real field.
class SpectralCoeffs {
 public:
  SpectralCoeffs(Grid grid, std::vector<Complex> half);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const Complex> half_spectrum() const noexcept { return half_; }

  /// Coefficient of wavenumber k in (-n/2, n/2].
  Complex at(int k) const;

 private:
  Grid grid_;
  std::vector<Complex> half_;
};

SpectralCoeffs transform(const RealField& field);
RealField inverse_transform(const SpectralCoeffs& coeffs);

/// Multiplier (2 pi i k)^order. Odd orders drop the Nyquist mode.
Complex derivative_multiplier(int k, int order, int n);

/// Fourier multiplier of (1 - (mu/12) d^2/dx^2)^{-1}.
inline double helmholtz_multiplier(int k, double mu) {
  constexpr double two_pi = 6.283185307179586476925286766559;
  const double w = two_pi * k;
  return 1.0 / (1.0 + (mu / 12.0) * w * w);
}

/// Spectral derivative of order 1, 2 or 3.
RealField derivative(const RealField& field, int order);

/// Solves (1 - (mu/12) d^2/dx^2) v = field. Throws std::invalid_argument if mu <= 0.
RealField helmholtz_inverse(const RealField& field, double mu);

/// Share of the non-mean energy held by the top third of the retained band
/// (floor(2*cutoff/3), cutoff]. Returns 0 for a constant field.
double tail_fraction(std::span<const Complex> half, int cutoff);

/// Extremum of periodic nodal samples: the extreme node refined by a
/// three-point parabolic fit. location is in [0,1); ties within round-off go
/// to the smallest node.
struct Extremum {
  double value;
  double location;
};
Extremum refined_max(std::span<const double> v);
Extremum refined_min(std::span<const double> v);

/// Extremum of the trigonometric interpolant of a field: refined_max/min gives
/// the start, then Newton steps on the interpolant's derivative stay within one
/// cell of the extreme node. Falls back to the parabolic estimate if Newton
/// leaves that cell or the curvature has the wrong sign.
Extremum interpolant_max(const RealField& field);
Extremum interpolant_min(const RealField& field);

/// Discrete L2 norm sqrt(mean(v^2)).
double l2_norm(std::span<const double> v);
double max_norm(std::span<const double> v);

}  // namespace mswave
