#include "mswave/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mswave/kernel.hpp"

namespace mswave {

namespace {

int padded_size(int n) {
  const int m = 5 * n / 2;
  return m % 2 == 0 ? m : m + 1;
}

kernels::NonlocalCoefficients nonlocal_coefficients(const Params& p) {
  const double e = p.epsilon;
  return {3.5 * e, 2.5 * e, -e * e / 8.0, 3.0 * e * e * e / 64.0, -(7.0 / 48.0) * e * p.mu};
}

kernels::DirectCoefficients direct_coefficients(const Params& p) {
  const double e = p.epsilon;
  return {1.5 * e, -(3.0 / 8.0) * e * e, (3.0 / 16.0) * e * e * e, (7.0 / 24.0) * e * p.mu};
}

}  // namespace

void validate(const Params& params) {
  if (!(params.epsilon > 0.0) || !std::isfinite(params.epsilon))
    throw std::invalid_argument("epsilon must be positive and finite");
  if (!(params.mu > 0.0) || !std::isfinite(params.mu)) throw std::invalid_argument("mu must be positive and finite");
}

int dealias_cutoff(int n, Dealias mode) { return mode == Dealias::TwoThirds ? n / 3 : n / 2 - 1; }

RhsEvaluator::RhsEvaluator(Grid grid, Params params, ModelOptions options)
    : grid_(grid),
      product_grid_(options.dealias == Dealias::Pad52 ? make_grid(padded_size(grid.n())) : grid),
      params_(params),
      options_(options),
      cutoff_(dealias_cutoff(grid.n(), options.dealias)) {
  validate(params_);
  const auto ns = static_cast<std::size_t>(grid_.spectral_size());
  const auto np = static_cast<std::size_t>(product_grid_.n());
  d1_.resize(ns);
  d2_.resize(ns);
  d3_.resize(ns);
  helm_.resize(ns);
  for (int k = 0; k < grid_.spectral_size(); ++k) {
    const auto i = static_cast<std::size_t>(k);
    d1_[i] = derivative_multiplier(k, 1, grid_.n());
    d2_[i] = derivative_multiplier(k, 2, grid_.n());
    d3_[i] = derivative_multiplier(k, 3, grid_.n());
    helm_[i] = helmholtz_multiplier(k, params_.mu);
  }
  for (CVec* v : {&u_hat_, &ux_hat_, &uxx_hat_, &uxxx_hat_, &work_hat_, &prod_hat_}) v->resize(ns);
  pad_hat_.resize(static_cast<std::size_t>(product_grid_.spectral_size()));
  for (std::vector<double>* v : {&u_p_, &ux_p_, &uxx_p_, &uxxx_p_, &prod_a_, &prod_b_}) v->resize(np);
}

void RhsEvaluator::to_product_grid(const CVec& coeffs, std::vector<double>& values) {
  if (options_.dealias == Dealias::TwoThirds) {
    grid_.inverse(coeffs, values);
    return;
  }
  const int half_n = grid_.n() / 2;
  std::fill(pad_hat_.begin(), pad_hat_.end(), Complex{});
  std::copy(coeffs.begin(), coeffs.begin() + half_n, pad_hat_.begin());
  // The base-grid Nyquist coefficient stands for both +n/2 and -n/2.
  pad_hat_[static_cast<std::size_t>(half_n)] = 0.5 * coeffs[static_cast<std::size_t>(half_n)].real();
  product_grid_.inverse(pad_hat_, values);
}

void RhsEvaluator::from_product_grid(const std::vector<double>& values, CVec& coeffs) {
  if (options_.dealias == Dealias::TwoThirds) {
    grid_.forward(values, coeffs);
  } else {
    product_grid_.forward(values, pad_hat_);
    std::copy(pad_hat_.begin(), pad_hat_.begin() + grid_.spectral_size(), coeffs.begin());
  }
  std::fill(coeffs.begin() + cutoff_ + 1, coeffs.end(), Complex{});
}

void RhsEvaluator::check_finite(std::span<const double> v, const char* what) const {
  for (std::size_t j = 0; j < v.size(); ++j)
    if (!std::isfinite(v[j]))
      throw NumericalOverflow(std::string(what) + ": non-finite value at node " + std::to_string(j));
}

void RhsEvaluator::g_spectrum(CVec& g_hat) {
  kernels::multiply_spectrum(options_.exec, u_hat_, d1_, ux_hat_);
  to_product_grid(u_hat_, u_p_);
  to_product_grid(ux_hat_, ux_p_);
  kernels::nonlocal_products(options_.exec, u_p_, ux_p_, nonlocal_coefficients(params_), prod_a_, prod_b_);
  from_product_grid(prod_b_, g_hat);
  for (std::size_t k = 0; k < g_hat.size(); ++k) g_hat[k] += 2.0 * u_hat_[k];
}

void RhsEvaluator::g(std::span<const double> u, std::span<double> out) {
  grid_.forward(u, u_hat_);
  g_spectrum(work_hat_);
  grid_.inverse(work_hat_, out);
  check_finite(out, "g(u)");
}

void RhsEvaluator::f(std::span<const double> u, std::span<double> out) {
  grid_.forward(u, u_hat_);
  g_spectrum(work_hat_);
  for (std::size_t k = 0; k < work_hat_.size(); ++k) work_hat_[k] *= -helm_[k] * d1_[k];
  grid_.inverse(work_hat_, out);
  check_finite(out, "f(u)");
}

void RhsEvaluator::nonlocal(std::span<const double> u, std::span<double> out) {
  grid_.forward(u, u_hat_);
  g_spectrum(work_hat_);
  // prod_a_ holds the transport product from g_spectrum.
  from_product_grid(prod_a_, prod_hat_);
  for (std::size_t k = 0; k < work_hat_.size(); ++k)
    work_hat_[k] = ux_hat_[k] + prod_hat_[k] - helm_[k] * d1_[k] * work_hat_[k];
  grid_.inverse(work_hat_, out);
  check_finite(out, "rhs_nonlocal");
}

void RhsEvaluator::direct(std::span<const double> u, std::span<double> out) {
  grid_.forward(u, u_hat_);
  kernels::multiply_spectrum(options_.exec, u_hat_, d1_, ux_hat_);
  kernels::multiply_spectrum(options_.exec, u_hat_, d2_, uxx_hat_);
  kernels::multiply_spectrum(options_.exec, u_hat_, d3_, uxxx_hat_);
  to_product_grid(u_hat_, u_p_);
  to_product_grid(ux_hat_, ux_p_);
  to_product_grid(uxx_hat_, uxx_p_);
  to_product_grid(uxxx_hat_, uxxx_p_);
  kernels::direct_products(options_.exec, u_p_, ux_p_, uxx_p_, uxxx_p_, direct_coefficients(params_), prod_a_);
  from_product_grid(prod_a_, prod_hat_);
  const double dispersion = params_.mu / 12.0;
  for (std::size_t k = 0; k < work_hat_.size(); ++k)
    work_hat_[k] = -helm_[k] * (ux_hat_[k] + prod_hat_[k] + dispersion * uxxx_hat_[k]);
  grid_.inverse(work_hat_, out);
  check_finite(out, "rhs_direct");
}

namespace {

template <class Method>
RealField evaluate(const State& state, const Params& params, const ModelOptions& options, Method method) {
  RhsEvaluator eval(state.u.grid(), params, options);
  std::vector<double> out(static_cast<std::size_t>(state.u.size()));
  (eval.*method)(state.u.values(), out);
  return RealField(state.u.grid(), std::move(out));
}

}  // namespace

RealField g_of_u(const State& state, const Params& params, const ModelOptions& options) {
  return evaluate(state, params, options, &RhsEvaluator::g);
}

RealField f_of_u(const State& state, const Params& params, const ModelOptions& options) {
  return evaluate(state, params, options, &RhsEvaluator::f);
}

RealField rhs_nonlocal(const State& state, const Params& params, const ModelOptions& options) {
  return evaluate(state, params, options, &RhsEvaluator::nonlocal);
}

RealField rhs_direct(const State& state, const Params& params, const ModelOptions& options) {
  return evaluate(state, params, options, &RhsEvaluator::direct);
}

double identity_residual(const State& state, const Params& params, const ModelOptions& options) {
  const RealField g = g_of_u(state, params, options);
  const RealField pg = convolve_with_kernel(params.mu, g);
  const RealField pg_xx = derivative(pg, 2);
  const double s = 12.0 / params.mu;
  double worst = 0.0;
  for (int j = 0; j < g.size(); ++j) worst = std::max(worst, std::abs(pg_xx[j] - s * (pg[j] - g[j])));
  return worst;
}

}  // namespace mswave
