#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mswave/diagnostics.hpp"
#include "mswave/model.hpp"
#include "mswave/timestepper.hpp"

namespace mswave::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FourierTerm {
  int mode = 1;
  double cos_amp = 0.0;
  double sin_amp = 0.0;
};

struct InitialCondition {
  std::string kind = "sine";  // sine | multisine | bump | fourier
  double amplitude = 0.1;
  int mode = 1;
  std::vector<FourierTerm> coefficients;
  double width = 0.05;
};

struct RunConfig {
  Params params;
  int n = 256;
  Dealias dealias = Dealias::TwoThirds;
  kernels::Exec exec = kernels::Exec::Parallel;
  StepControls controls;
  InitialCondition ic;
  NormsSource norms_source = NormsSource::Numeric;
  std::string output_csv = "diagnostics.csv";
  std::string output_json;  // empty: summary.json for simulate, stdout otherwise
  std::uint64_t seed = 0;

  ModelOptions model_options() const { return {dealias, exec}; }
};

/// Every key accepted in a config document.
const std::vector<std::string>& known_keys();

/// Parses a flat "key = value" document ('#' starts a comment) and applies
/// "key=value" overrides on top. Throws ConfigError on syntax errors,
/// duplicate or unknown keys, and constraint violations.
RunConfig parse_config(std::string_view text, const std::vector<std::string>& overrides = {});

/// Fully resolved configuration as a flat JSON object keyed like the document.
nlohmann::json config_to_json(const RunConfig& config);

}  // namespace mswave::cli
