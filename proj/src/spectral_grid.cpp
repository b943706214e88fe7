#include "mswave/spectral_grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mswave {

namespace detail {

// Plans are created with FFTW_ESTIMATE | FFTW_UNALIGNED so that the chosen
// algorithm never depends on timing or on the alignment of caller buffers.
// Repeated runs are therefore bit-identical.
struct FftPlans {
  int n = 0;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  ~FftPlans() {
    std::lock_guard lock(planner_mutex());
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
  }

  // The FFTW planner is not thread-safe; execution of finished plans is.
  static std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
  }
};

namespace {

std::shared_ptr<const FftPlans> plans_for(int n) {
  // Touch the planner mutex first so it outlives the cache at static destruction.
  FftPlans::planner_mutex();
  static std::mutex cache_mutex;
  static std::map<int, std::shared_ptr<const FftPlans>> cache;

  std::lock_guard cache_lock(cache_mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  auto plans = std::make_shared<FftPlans>();
  plans->n = n;
  {
    std::lock_guard lock(FftPlans::planner_mutex());
    double* real = fftw_alloc_real(static_cast<std::size_t>(n));
    fftw_complex* cplx = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT;
    plans->r2c = fftw_plan_dft_r2c_1d(n, real, cplx, flags);
    plans->c2r = fftw_plan_dft_c2r_1d(n, cplx, real, flags);
    fftw_free(real);
    fftw_free(cplx);
  }
  if (!plans->r2c || !plans->c2r) throw std::runtime_error("FFTW planning failed for n=" + std::to_string(n));
  cache.emplace(n, plans);
  return plans;
}

}  // namespace
}  // namespace detail

Grid::Grid(int n, std::shared_ptr<const detail::FftPlans> plans) : n_(n), plans_(std::move(plans)) {}

Grid make_grid(int n) {
  if (n % 2 != 0) throw std::invalid_argument("grid size n must be even (got " + std::to_string(n) + ")");
  if (n < 8) throw std::invalid_argument("grid size n must be >= 8 (got " + std::to_string(n) + ")");
  return Grid(n, detail::plans_for(n));
}

std::vector<double> Grid::nodes() const {
  std::vector<double> x(static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j) x[static_cast<std::size_t>(j)] = node(j);
  return x;
}

std::vector<int> Grid::wavenumbers() const {
  std::vector<int> k;
  k.reserve(static_cast<std::size_t>(n_));
  for (int m = -n_ / 2 + 1; m <= n_ / 2; ++m) k.push_back(m);
  return k;
}

void Grid::forward(std::span<const double> values, std::span<Complex> coeffs) const {
  if (values.size() != static_cast<std::size_t>(n_) || coeffs.size() != static_cast<std::size_t>(spectral_size()))
    throw std::invalid_argument("Grid::forward: buffer size mismatch");
  // r2c with FFTW_PRESERVE_INPUT leaves the input untouched.
  fftw_execute_dft_r2c(plans_->r2c, const_cast<double*>(values.data()),
                       reinterpret_cast<fftw_complex*>(coeffs.data()));
  const double scale = 1.0 / n_;
  for (auto& c : coeffs) c *= scale;
}

void Grid::inverse(std::span<const Complex> coeffs, std::span<double> values) const {
  if (values.size() != static_cast<std::size_t>(n_) || coeffs.size() != static_cast<std::size_t>(spectral_size()))
    throw std::invalid_argument("Grid::inverse: buffer size mismatch");
  fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(coeffs.data())),
                       values.data());
}

RealField::RealField(Grid grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(grid_.n()))
    throw std::invalid_argument("RealField: expected " + std::to_string(grid_.n()) + " values, got " +
                                std::to_string(values_.size()));
  for (std::size_t j = 0; j < values_.size(); ++j)
    if (!std::isfinite(values_[j]))
      throw std::invalid_argument("RealField: non-finite value at node " + std::to_string(j));
}

RealField RealField::zeros(const Grid& grid) {
  return RealField(grid, std::vector<double>(static_cast<std::size_t>(grid.n()), 0.0));
}

double RealField::mean() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s / static_cast<double>(values_.size());
}

double RealField::max_abs() const { return max_norm(values_); }

SpectralCoeffs::SpectralCoeffs(Grid grid, std::vector<Complex> half) : grid_(std::move(grid)), half_(std::move(half)) {
  if (half_.size() != static_cast<std::size_t>(grid_.spectral_size()))
    throw std::invalid_argument("SpectralCoeffs: half spectrum has wrong length");
}

Complex SpectralCoeffs::at(int k) const {
  const int n = grid_.n();
  if (k <= -n / 2 || k > n / 2) throw std::out_of_range("wavenumber outside (-n/2, n/2]");
  return k >= 0 ? half_[static_cast<std::size_t>(k)] : std::conj(half_[static_cast<std::size_t>(-k)]);
}

SpectralCoeffs transform(const RealField& field) {
  std::vector<Complex> half(static_cast<std::size_t>(field.grid().spectral_size()));
  field.grid().forward(field.values(), half);
  return SpectralCoeffs(field.grid(), std::move(half));
}

RealField inverse_transform(const SpectralCoeffs& coeffs) {
  std::vector<double> v(static_cast<std::size_t>(coeffs.grid().n()));
  coeffs.grid().inverse(coeffs.half_spectrum(), v);
  return RealField(coeffs.grid(), std::move(v));
}

Complex derivative_multiplier(int k, int order, int n) {
  constexpr double two_pi = 6.283185307179586476925286766559;
  if (order % 2 == 1 && std::abs(k) == n / 2) return {0.0, 0.0};
  const Complex ik(0.0, two_pi * k);
  Complex m(1.0, 0.0);
  for (int i = 0; i < order; ++i) m *= ik;
  return m;
}

RealField derivative(const RealField& field, int order) {
  if (order < 1 || order > 3)
    throw std::invalid_argument("derivative order must be 1, 2 or 3 (got " + std::to_string(order) + ")");
  const Grid& g = field.grid();
  std::vector<Complex> half(static_cast<std::size_t>(g.spectral_size()));
  g.forward(field.values(), half);
  for (int k = 0; k < g.spectral_size(); ++k) half[static_cast<std::size_t>(k)] *= derivative_multiplier(k, order, g.n());
  std::vector<double> v(static_cast<std::size_t>(g.n()));
  g.inverse(half, v);
  return RealField(g, std::move(v));
}

RealField helmholtz_inverse(const RealField& field, double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("helmholtz_inverse: mu must be positive and finite");
  const Grid& g = field.grid();
  std::vector<Complex> half(static_cast<std::size_t>(g.spectral_size()));
  g.forward(field.values(), half);
  for (int k = 0; k < g.spectral_size(); ++k) half[static_cast<std::size_t>(k)] *= helmholtz_multiplier(k, mu);
  std::vector<double> v(static_cast<std::size_t>(g.n()));
  g.inverse(half, v);
  return RealField(g, std::move(v));
}

double tail_fraction(std::span<const Complex> half, int cutoff) {
  const int last = static_cast<int>(half.size()) - 1;  // Nyquist index
  cutoff = std::min(cutoff, last);
  const int tail_start = (2 * cutoff) / 3;
  double total = 0.0;
  double tail = 0.0;
  for (int k = 1; k <= last; ++k) {
    const double w = (k == last) ? 1.0 : 2.0;
    const double e = w * std::norm(half[static_cast<std::size_t>(k)]);
    total += e;
    if (k > tail_start && k <= cutoff) tail += e;
  }
  return total > 0.0 ? tail / total : 0.0;
}

double l2_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return v.empty() ? 0.0 : std::sqrt(s / static_cast<double>(v.size()));
}

double max_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace mswave

namespace mswave {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Extremum refine_peak(std::span<const double> v, double sign) {
  const std::size_t n = v.size();
  if (n == 0) throw std::invalid_argument("refined extremum of an empty sequence");
  double best = sign * v[0];
  double scale = 0.0;
  for (double x : v) {
    best = std::max(best, sign * x);
    scale = std::max(scale, std::abs(x));
  }
  // Nodes within round-off of the extreme value count as ties.
  const double tol = 16.0 * std::numeric_limits<double>::epsilon() * std::max(scale, 1e-300);
  std::size_t j = 0;
  while (sign * v[j] < best - tol) ++j;

  const double ym = sign * v[(j + n - 1) % n];
  const double y0 = sign * v[j];
  const double yp = sign * v[(j + 1) % n];
  const double curvature = ym - 2.0 * y0 + yp;
  double offset = 0.0;
  double peak = y0;
  if (curvature < 0.0) {
    offset = std::clamp(0.5 * (ym - yp) / curvature, -0.5, 0.5);
    if (std::abs(offset) < 1e-9) offset = 0.0;  // round-off asymmetry, keep the node
    peak = y0 - 0.25 * (ym - yp) * offset;
  }
  double x = (static_cast<double>(j) + offset) / static_cast<double>(n);
  if (x < 0.0) x += 1.0;
  if (x >= 1.0) x -= 1.0;
  return {sign * std::max(peak, y0), x};
}

// Value and first two derivatives of the trigonometric interpolant at x.
std::array<double, 3> interpolant_at(std::span<const Complex> half, int n, double x) {
  std::array<double, 3> d{half[0].real(), 0.0, 0.0};
  const int nyq = n / 2;
  for (int k = 1; k <= nyq; ++k) {
    const double w = kTwoPi * k;
    const double theta = kTwoPi * std::fmod(static_cast<double>(k) * x, 1.0);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double re = half[static_cast<std::size_t>(k)].real();
    const double im = half[static_cast<std::size_t>(k)].imag();
    const double f = k == nyq ? 1.0 : 2.0;  // Nyquist taken as a real cosine
    const double im_eff = k == nyq ? 0.0 : im;
    d[0] += f * (re * c - im_eff * s);
    d[1] += f * w * (-re * s - im_eff * c);
    d[2] += f * w * w * (-re * c + im_eff * s);
  }
  return d;
}

Extremum polish_peak(const RealField& field, double sign) {
  const Extremum start = refine_peak(field.values(), sign);
  const int n = field.size();
  const double h = 1.0 / n;
  const double node = std::round(start.location * n) * h;
  const auto coeffs = transform(field);
  const auto half = coeffs.half_spectrum();
  double x = start.location;
  if (x - node > 0.5) x -= 1.0;
  if (node - x > 0.5) x += 1.0;
  for (int iter = 0; iter < 20; ++iter) {
    const auto d = interpolant_at(half, n, x);
    if (!(sign * d[2] < 0.0)) return start;
    const double step = d[1] / d[2];
    x -= step;
    if (std::abs(x - node) > h) return start;
    if (std::abs(step) <= 1e-15) break;
  }
  const double value = interpolant_at(half, n, x)[0];
  if (sign * value < sign * start.value) return start;
  if (std::abs(x - node) < 1e-9 * h) x = node;  // round-off offset, keep the node
  x -= std::floor(x);
  if (x >= 1.0) x = 0.0;
  return {value, x};
}

}  // namespace

Extremum refined_max(std::span<const double> v) { return refine_peak(v, 1.0); }
Extremum refined_min(std::span<const double> v) { return refine_peak(v, -1.0); }
Extremum interpolant_max(const RealField& field) { return polish_peak(field, 1.0); }
Extremum interpolant_min(const RealField& field) { return polish_peak(field, -1.0); }

}  // namespace mswave
