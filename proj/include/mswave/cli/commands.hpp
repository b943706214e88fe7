#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mswave/cli/config.hpp"

namespace mswave::cli {

/// Exit codes shared by all commands.
enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitBreaking = 2, kExitResolution = 3 };

int exit_code(Termination termination);

struct CommandContext {
  std::string output_dir = ".";
  /// Sweep worker count; 0 means MSWAVE_WORKERS or the hardware thread count.
  int workers = 0;
  std::ostream* out = nullptr;  // defaults to std::cout
  std::ostream* err = nullptr;  // defaults to std::cerr
};

/// Decimal text with 17 significant digits.
std::string format_double(double v);

/// Diagnostics CSV with a header row and LF line endings.
void write_diagnostics_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& rows);

nlohmann::json to_json(const DiagnosticsRecord& record);
nlohmann::json to_json(const BreakingReport& report);
nlohmann::json to_json(const KernelNorms& norms);

/// Breaking report for the config's initial condition, or nullopt when the
/// profile is constant.
std::optional<BreakingReport> initial_breaking_report(const RunConfig& config, const RealField& u0);

/// JSON summary of one simulation.
nlohmann::json simulate_summary(const RunConfig& config, const RunResult& result,
                                const std::optional<BreakingReport>& report);

int run_simulate(const RunConfig& config, const CommandContext& ctx);
int run_criterion(const RunConfig& config, const CommandContext& ctx);
int run_kernel(double mu, int n, const RunConfig& config, const CommandContext& ctx);
int run_check(const RunConfig& config, const CommandContext& ctx);

struct SweepSpec {
  std::string document;                // base config text
  std::vector<std::string> overrides;  // --set entries applied before the axis value
  std::string axis;                    // epsilon, mu or ic.amplitude
  std::vector<double> values;
};

/// Throws std::invalid_argument for an unsupported axis or empty/non-finite values.
void validate(const SweepSpec& spec);

/// Runs one simulation per value and writes sweep_index.csv plus
/// sweep_NNN.json into the output directory. Rows follow input order.
int run_sweep(const SweepSpec& spec, const CommandContext& ctx);

}  // namespace mswave::cli
