#include "mswave/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "mswave/cli/initial_condition.hpp"
#include "mswave/kernel.hpp"

namespace mswave::cli {

namespace fs = std::filesystem;

namespace {

std::ostream& out_of(const CommandContext& ctx) { return ctx.out ? *ctx.out : std::cout; }
std::ostream& err_of(const CommandContext& ctx) { return ctx.err ? *ctx.err : std::cerr; }

fs::path resolve(const CommandContext& ctx, const std::string& path) {
  const fs::path p(path);
  return p.is_absolute() ? p : fs::path(ctx.output_dir) / p;
}

std::ofstream open_output(const fs::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open output file " + path.string());
  return os;
}

void write_json(std::ostream& os, const nlohmann::json& doc) {
  os << doc.dump(2) << '\n';
  if (!os) throw std::runtime_error("failed writing JSON output");
}

// Emits a document to the configured JSON path, or to stdout when none is set.
void emit(const RunConfig& config, const CommandContext& ctx, const nlohmann::json& doc) {
  if (config.output_json.empty()) {
    write_json(out_of(ctx), doc);
    return;
  }
  std::ofstream os = open_output(resolve(ctx, config.output_json));
  write_json(os, doc);
}

nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

int exit_code(Termination termination) {
  switch (termination) {
    case Termination::Completed: return kExitOk;
    case Termination::BreakingDetected: return kExitBreaking;
    case Termination::ResolutionLost:
    case Termination::StepUnderflow: return kExitResolution;
  }
  return kExitError;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_diagnostics_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& rows) {
  os << "t,energy_e,functional_h,slope_sup,slope_argmax,min_ux,max_abs_u,mean_u,tail_fraction\n";
  for (const auto& r : rows) {
    os << format_double(r.t) << ',' << format_double(r.energy_e) << ',' << format_double(r.functional_h) << ','
       << format_double(r.slope_sup) << ',' << format_double(r.slope_argmax) << ',' << format_double(r.min_ux) << ','
       << format_double(r.max_abs_u) << ',' << format_double(r.mean_u) << ',' << format_double(r.tail_fraction)
       << '\n';
  }
}

nlohmann::json to_json(const DiagnosticsRecord& r) {
  return {{"energy_e", r.energy_e},       {"functional_h", r.functional_h}, {"max_abs_u", r.max_abs_u},
          {"mean_u", r.mean_u},           {"min_ux", r.min_ux},             {"slope_argmax", r.slope_argmax},
          {"slope_sup", r.slope_sup},     {"t", r.t},                       {"tail_fraction", r.tail_fraction}};
}

nlohmann::json to_json(const BreakingReport& r) {
  return {{"c0", r.c0},
          {"criterion_satisfied", r.criterion_satisfied},
          {"inf_slope_sq", r.inf_slope_sq},
          {"norms_source", std::string(to_string(r.norms_source))},
          {"s0", r.s0},
          {"t_lower", r.t_lower},
          {"t_upper", r.t_upper},
          {"threshold", r.threshold}};
}

nlohmann::json to_json(const KernelNorms& k) {
  return {{"closed_form_max_discrepancy", k.closed_form_max_discrepancy},
          {"mu", k.mu},
          {"n1_numeric", k.n1_numeric},
          {"n1_paper", k.n1_paper},
          {"n2_numeric", k.n2_numeric},
          {"n2_paper", k.n2_paper},
          {"ninf_numeric", k.ninf_numeric},
          {"ninf_paper", k.ninf_paper}};
}

std::optional<BreakingReport> initial_breaking_report(const RunConfig& config, const RealField& u0) {
  const KernelNorms norms = kernel_norms(config.params.mu, u0.grid());
  try {
    return breaking_report(u0, config.params, norms, config.norms_source);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

nlohmann::json simulate_summary(const RunConfig& config, const RunResult& result,
                                const std::optional<BreakingReport>& report) {
  return {
      {"breaking_report", report ? to_json(*report) : nlohmann::json(nullptr)},
      {"config", config_to_json(config)},
      {"final_diagnostics", to_json(result.diagnostics.back())},
      {"samples", result.diagnostics.size()},
      {"stats",
       {{"accepted_steps", result.stats.accepted},
        {"last_dt", result.stats.last_dt},
        {"overflow_retries", result.stats.overflow_retries},
        {"rejected_steps", result.stats.rejected}}},
      {"t_stop", result.t_stop},
      {"termination", std::string(to_string(result.termination))},
  };
}

int run_simulate(const RunConfig& config, const CommandContext& ctx) {
  try {
    const fs::path csv_path = resolve(ctx, config.output_csv);
    const fs::path json_path = resolve(ctx, config.output_json.empty() ? "summary.json" : config.output_json);
    // Open both outputs first so an unwritable path fails before any work.
    std::ofstream csv = open_output(csv_path);
    std::ofstream json = open_output(json_path);

    const RealField u0 = make_initial_condition(config);
    const auto report = initial_breaking_report(config, u0);
    const RunResult result = integrate(State{u0, 0.0}, config.params, config.controls, config.model_options());

    write_diagnostics_csv(csv, result.diagnostics);
    if (!csv.flush()) throw std::runtime_error("failed writing " + csv_path.string());
    write_json(json, simulate_summary(config, result, report));
    err_of(ctx) << "simulate: " << to_string(result.termination) << " at t=" << format_double(result.t_stop) << '\n';
    return exit_code(result.termination);
  } catch (const std::exception& e) {
    err_of(ctx) << "simulate: error: " << e.what() << '\n';
    return kExitError;
  }
}

int run_criterion(const RunConfig& config, const CommandContext& ctx) {
  try {
    const RealField u0 = make_initial_condition(config);
    const KernelNorms norms = kernel_norms(config.params.mu, u0.grid());
    const BreakingReport report = breaking_report(u0, config.params, norms, config.norms_source);
    emit(config, ctx,
         {{"breaking_report", to_json(report)}, {"config", config_to_json(config)}, {"kernel_norms", to_json(norms)}});
    return kExitOk;
  } catch (const std::exception& e) {
    err_of(ctx) << "criterion: error: " << e.what() << '\n';
    return kExitError;
  }
}

int run_kernel(double mu, int n, const RunConfig& config, const CommandContext& ctx) {
  try {
    const Grid grid = make_grid(n);
    nlohmann::json doc = to_json(kernel_norms(mu, grid));
    doc["n"] = n;
    doc["residual"] = residual_helmholtz_kernel(mu, grid);
    emit(config, ctx, doc);
    return kExitOk;
  } catch (const std::exception& e) {
    err_of(ctx) << "kernel: error: " << e.what() << '\n';
    return kExitError;
  }
}

int run_check(const RunConfig& config, const CommandContext& ctx) {
  try {
    const Grid grid = make_grid(config.n);
    const ModelOptions options = config.model_options();
    struct Fixture {
      std::string name;
      RealField u;
    };
    RunConfig random = config;
    random.ic = {"fourier", 0.1, 3, {}, 0.05};
    const std::vector<Fixture> fixtures = {
        {"config_ic", make_initial_condition(config)},
        {"sine_0.1", RealField::sample(grid, [](double x) { return 0.1 * std::sin(2.0 * std::numbers::pi * x); })},
        {"random_3mode", make_initial_condition(random)},
    };

    nlohmann::json checks = nlohmann::json::array();
    bool all_passed = true;
    auto add = [&](const std::string& fixture, const std::string& name, double value, double threshold,
                   bool applicable) {
      const bool passed = !applicable || value <= threshold;
      all_passed = all_passed && passed;
      checks.push_back({{"applicable", applicable},
                        {"fixture", fixture},
                        {"name", name},
                        {"passed", passed},
                        {"threshold", threshold},
                        {"value", number_or_null(value)}});
    };

    for (const auto& f : fixtures) {
      const State s{f.u, 0.0};
      std::vector<Complex> half(static_cast<std::size_t>(grid.spectral_size()));
      grid.forward(f.u.values(), half);
      // The two forms agree only up to aliasing, so the comparison needs a resolved field.
      const bool resolved = tail_fraction(half, dealias_cutoff(grid.n(), options.dealias)) < 1e-10;
      const RealField a = rhs_nonlocal(s, config.params, options);
      const RealField b = rhs_direct(s, config.params, options);
      double diff = 0.0;
      for (int j = 0; j < grid.n(); ++j) diff = std::max(diff, std::abs(a[j] - b[j]));
      add(f.name, "two_form_equivalence", diff, 1e-9 * std::pow(1.0 + f.u.max_abs(), 4), resolved);
      add(f.name, "identity_residual", identity_residual(s, config.params, options), 1e-9, resolved);
      add(f.name, "rhs_mean", std::abs(a.mean()), 1e-12, true);
    }
    add("kernel", "helmholtz_kernel_residual", residual_helmholtz_kernel(config.params.mu, grid), 1e-10, true);

    emit(config, ctx, {{"checks", checks}, {"config", config_to_json(config)}, {"passed", all_passed}});
    return all_passed ? kExitOk : kExitError;
  } catch (const std::exception& e) {
    err_of(ctx) << "check: error: " << e.what() << '\n';
    return kExitError;
  }
}

void validate(const SweepSpec& spec) {
  if (spec.axis != "epsilon" && spec.axis != "mu" && spec.axis != "ic.amplitude")
    throw std::invalid_argument("sweep axis must be one of epsilon, mu, ic.amplitude (got '" + spec.axis + "')");
  if (spec.values.empty()) throw std::invalid_argument("sweep values must not be empty");
  for (double v : spec.values)
    if (!std::isfinite(v)) throw std::invalid_argument("sweep values must be finite");
}

namespace {

struct SweepRow {
  bool ok = false;
  std::string error;
  Termination termination = Termination::Completed;
  double t_stop = 0.0;
  std::optional<BreakingReport> report;
  nlohmann::json summary;
};

SweepRow run_sweep_point(const SweepSpec& spec, double value) {
  SweepRow row;
  try {
    std::vector<std::string> overrides = spec.overrides;
    overrides.push_back(spec.axis + "=" + format_double(value));
    const RunConfig config = parse_config(spec.document, overrides);
    const RealField u0 = make_initial_condition(config);
    row.report = initial_breaking_report(config, u0);
    const RunResult result = integrate(State{u0, 0.0}, config.params, config.controls, config.model_options());
    row.termination = result.termination;
    row.t_stop = result.t_stop;
    row.summary = simulate_summary(config, result, row.report);
    row.ok = true;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

int resolve_workers(int requested, std::size_t jobs) {
  int w = requested;
  if (w <= 0) {
    if (const char* env = std::getenv("MSWAVE_WORKERS")) w = std::atoi(env);
  }
  if (w <= 0) w = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(w), jobs));
}

}  // namespace

int run_sweep(const SweepSpec& spec, const CommandContext& ctx) {
  try {
    validate(spec);
    parse_config(spec.document, spec.overrides);  // fail fast on a bad base config

    const fs::path index_path = resolve(ctx, "sweep_index.csv");
    std::ofstream index = open_output(index_path);

    std::vector<SweepRow> rows(spec.values.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < rows.size(); i = next++) rows[i] = run_sweep_point(spec, spec.values[i]);
    };
    const int workers = resolve_workers(ctx.workers, rows.size());
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    bool all_ok = true;
    index << "value,termination,t_stop,criterion_satisfied,t_lower,t_upper\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const SweepRow& r = rows[i];
      char name[32];
      std::snprintf(name, sizeof name, "sweep_%03zu.json", i);
      nlohmann::json doc = r.ok ? r.summary : nlohmann::json{{"error", r.error}};
      doc["sweep"] = {{"axis", spec.axis}, {"index", i}, {"value", spec.values[i]}};
      std::ofstream os = open_output(resolve(ctx, name));
      write_json(os, doc);

      index << format_double(spec.values[i]) << ',';
      if (!r.ok) {
        all_ok = false;
        index << "Error,,,,\n";
        err_of(ctx) << "sweep: value " << format_double(spec.values[i]) << " failed: " << r.error << '\n';
        continue;
      }
      index << to_string(r.termination) << ',' << format_double(r.t_stop) << ',';
      if (r.report)
        index << (r.report->criterion_satisfied ? "true" : "false") << ',' << format_double(r.report->t_lower) << ','
              << format_double(r.report->t_upper) << '\n';
      else
        index << ",,\n";
    }
    if (!index.flush()) throw std::runtime_error("failed writing " + index_path.string());
    return all_ok ? kExitOk : kExitError;
  } catch (const std::exception& e) {
    err_of(ctx) << "sweep: error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace mswave::cli
