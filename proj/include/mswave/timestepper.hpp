#pragma once

#include <string_view>
#include <vector>

#include "mswave/diagnostics.hpp"
#include "mswave/model.hpp"

namespace mswave {

/// Exponential filter sigma(k) = exp(-strength (k/kmax)^order), applied after
/// every accepted step when enabled.
struct FilterOptions {
  bool enabled = false;
  double strength = 36.0;
  int order = 16;
};

struct StepControls {
  double t_end = 1.0;
  double dt_init = 1e-3;
  double dt_min = 1e-12;
  double rel_tol = 1e-10;
  double s_max = 1e6;
  double tail_max = 1e-3;
  double sample_interval = 1e-3;
  FilterOptions filter;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const StepControls& controls);

enum class Termination { Completed, BreakingDetected, ResolutionLost, StepUnderflow };

std::string_view to_string(Termination termination);

struct RunStats {
  long accepted = 0;
  long rejected = 0;
  long overflow_retries = 0;
  double last_dt = 0.0;
};

struct RunResult {
  State final_state;
  Termination termination = Termination::Completed;
  double t_stop = 0.0;
  std::vector<DiagnosticsRecord> diagnostics;
  RunStats stats;
};

/// Advances u by dt with classical RK4 on the nonlocal form, reusing the
/// evaluator's scratch space. Not thread-safe; one instance per worker.
class Rk4Stepper {
 public:
  Rk4Stepper(Grid grid, Params params, ModelOptions options = {});

  /// out may alias neither u nor internal buffers. Throws NumericalOverflow
  /// carrying t and dt if any stage turns non-finite.
  void step(std::span<const double> u, double t, double dt, std::span<double> out);

  RhsEvaluator& evaluator() noexcept { return rhs_; }

 private:
  RhsEvaluator rhs_;
  kernels::Exec exec_;
  std::vector<double> k1_, k2_, k3_, k4_, tmp_;
};

/// One RK4 step. Throws std::invalid_argument if dt is not positive and finite.
State step_rk4(const State& state, double dt, const Params& params, const ModelOptions& options = {});

/// Adaptive step-doubling integration with diagnostics sampled every
/// sample_interval and at the stopping time.
RunResult integrate(const State& initial, const Params& params, const StepControls& controls,
                    const ModelOptions& options = {});

}  // namespace mswave
