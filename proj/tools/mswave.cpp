#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "mswave/cli/commands.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read config file " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad sweep value '" + item + "'");
    values.push_back(v);
  }
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral simulator for the moderate-amplitude shallow-water wave equation"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  mswave::cli::CommandContext ctx;
  auto add_globals = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "Config document (key = value lines)");
    cmd->add_option("--set", overrides, "Override a config key, key=value (repeatable)")->take_all();
    cmd->add_option("--output-dir", ctx.output_dir, "Directory for output files");
  };

  auto* simulate = app.add_subcommand("simulate", "Integrate and write diagnostics CSV plus JSON summary");
  auto* criterion = app.add_subcommand("criterion", "Evaluate the breaking criterion on the initial profile");
  auto* kernel = app.add_subcommand("kernel", "Kernel norms and Helmholtz residual");
  auto* sweep = app.add_subcommand("sweep", "Run simulations over one parameter axis");
  auto* check = app.add_subcommand("check", "Model self-tests");
  for (auto* cmd : {simulate, criterion, kernel, sweep, check}) add_globals(cmd);

  double kernel_mu = 0.0;
  int kernel_n = 0;
  kernel->add_option("--mu", kernel_mu, "Shallowness parameter (defaults to the config value)");
  kernel->add_option("--n", kernel_n, "Grid size (defaults to the config value)");

  std::string axis;
  std::string values_text;
  sweep->add_option("--axis", axis, "epsilon, mu or ic.amplitude")->required();
  sweep->add_option("--values", values_text, "Comma-separated values")->required();
  sweep->add_option("--workers", ctx.workers, "Worker threads (default: MSWAVE_WORKERS or hardware threads)")
      ->check(CLI::NonNegativeNumber);

  CLI11_PARSE(app, argc, argv);

  namespace mc = mswave::cli;
  try {
    const std::string document = config_path.empty() ? std::string() : read_file(config_path);
    if (*sweep) {
      mc::SweepSpec spec{document, overrides, axis, parse_values(values_text)};
      return mc::run_sweep(spec, ctx);
    }
    const mc::RunConfig config = mc::parse_config(document, overrides);
    if (*simulate) return mc::run_simulate(config, ctx);
    if (*criterion) return mc::run_criterion(config, ctx);
    if (*check) return mc::run_check(config, ctx);
    if (*kernel)
      return mc::run_kernel(kernel_mu > 0.0 || kernel->count("--mu") ? kernel_mu : config.params.mu,
                            kernel_n != 0 || kernel->count("--n") ? kernel_n : config.n, config, ctx);
  } catch (const std::exception& e) {
    std::cerr << "mswave: error: " << e.what() << '\n';
    return mc::kExitError;
  }
  return mc::kExitError;
}
