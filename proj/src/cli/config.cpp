#include "mswave/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>

namespace mswave::cli {

namespace {

struct Entry {
  std::string value;
  int line = 0;  // 0 for --set overrides
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string where(const Entry& e) { return e.line > 0 ? " (line " + std::to_string(e.line) + ")" : " (--set)"; }

class Reader {
 public:
  explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  const Entry* find(const std::string& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::optional<double> real(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) return std::nullopt;
    double v = 0.0;
    const char* b = e->value.data();
    const char* end = b + e->value.size();
    auto [p, ec] = std::from_chars(b, end, v);
    if (ec != std::errc() || p != end || !std::isfinite(v))
      throw ConfigError(key + ": expected a finite number, got '" + e->value + "'" + where(*e));
    return v;
  }

  template <class Int>
  std::optional<Int> integer(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) return std::nullopt;
    Int v{};
    const char* b = e->value.data();
    const char* end = b + e->value.size();
    auto [p, ec] = std::from_chars(b, end, v);
    if (ec != std::errc() || p != end) throw ConfigError(key + ": expected an integer, got '" + e->value + "'" + where(*e));
    return v;
  }

  std::optional<std::string> text(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) return std::nullopt;
    return e->value;
  }

  std::optional<bool> boolean(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) return std::nullopt;
    if (e->value == "true") return true;
    if (e->value == "false") return false;
    throw ConfigError(key + ": expected true or false, got '" + e->value + "'" + where(*e));
  }

 private:
  std::map<std::string, Entry> entries_;
};

void require(bool ok, const std::string& key, const std::string& constraint) {
  if (!ok) throw ConfigError(key + ": " + constraint);
}

std::vector<FourierTerm> parse_coefficients(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("ic.coefficients: not valid JSON: ") + e.what());
  }
  const std::string shape = "ic.coefficients: expected a JSON array of [mode, cos_amp, sin_amp] triples";
  if (!doc.is_array()) throw ConfigError(shape);
  std::vector<FourierTerm> out;
  for (const auto& t : doc) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number() || !t[2].is_number())
      throw ConfigError(shape);
    out.push_back({t[0].get<int>(), t[1].get<double>(), t[2].get<double>()});
    require(out.back().mode >= 1, "ic.coefficients", "modes must be positive integers");
    require(std::isfinite(out.back().cos_amp) && std::isfinite(out.back().sin_amp), "ic.coefficients",
            "amplitudes must be finite");
  }
  return out;
}

std::string dealias_name(Dealias d) { return d == Dealias::TwoThirds ? "two_thirds" : "pad_5_2"; }

}  // namespace

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "dealias",      "dt_init",         "dt_min",          "epsilon",         "exec",        "filter.enabled",
      "filter.order", "filter.strength", "ic.amplitude",    "ic.coefficients", "ic.kind",     "ic.mode",
      "ic.width",     "mu",              "n",               "norms_source",    "output_csv",  "output_json",
      "rel_tol",      "s_max",           "sample_interval", "seed",            "t_end",       "tail_max",
  };
  return keys;
}

RunConfig parse_config(std::string_view text, const std::vector<std::string>& overrides) {
  std::map<std::string, Entry> entries;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value', got '" + std::string(line) + "'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (auto it = entries.find(key); it != entries.end())
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "' (first set on line " +
                        std::to_string(it->second.line) + ")");
    entries[key] = {value, line_no};
  }
  for (const std::string& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + o + "'");
    const std::string key(trim(std::string_view(o).substr(0, eq)));
    entries[key] = {std::string(trim(std::string_view(o).substr(eq + 1))), 0};
  }

  std::vector<std::string> unknown;
  for (const auto& [key, entry] : entries)
    if (std::find(known_keys().begin(), known_keys().end(), key) == known_keys().end()) unknown.push_back(key);
  if (!unknown.empty()) {
    std::string msg = "unknown configuration keys:";
    for (const auto& k : unknown) msg += " " + k;
    throw ConfigError(msg);
  }

  const Reader r(std::move(entries));
  RunConfig c;
  c.params.epsilon = r.real("epsilon").value_or(c.params.epsilon);
  c.params.mu = r.real("mu").value_or(c.params.mu);
  require(c.params.epsilon > 0.0, "epsilon", "must be positive");
  require(c.params.mu > 0.0, "mu", "must be positive");

  c.n = r.integer<int>("n").value_or(c.n);
  require(c.n >= 8 && c.n % 2 == 0, "n", "must be even and >= 8");

  if (auto d = r.text("dealias")) {
    if (*d == "two_thirds") c.dealias = Dealias::TwoThirds;
    else if (*d == "pad_5_2") c.dealias = Dealias::Pad52;
    else throw ConfigError("dealias: must be 'two_thirds' or 'pad_5_2'");
  }
  if (auto e = r.text("exec")) {
    if (*e == "parallel") c.exec = kernels::Exec::Parallel;
    else if (*e == "serial") c.exec = kernels::Exec::Serial;
    else throw ConfigError("exec: must be 'parallel' or 'serial'");
  }

  StepControls& s = c.controls;
  s.t_end = r.real("t_end").value_or(1.0);
  require(s.t_end > 0.0, "t_end", "must be positive");
  s.dt_init = r.real("dt_init").value_or(std::min(1e-3, s.t_end));
  s.dt_min = r.real("dt_min").value_or(1e-12);
  s.rel_tol = r.real("rel_tol").value_or(1e-10);
  s.s_max = r.real("s_max").value_or(1e6);
  s.tail_max = r.real("tail_max").value_or(1e-3);
  s.sample_interval = r.real("sample_interval").value_or(s.t_end / 1000.0);
  require(s.dt_init > 0.0, "dt_init", "must be positive");
  require(s.dt_min > 0.0, "dt_min", "must be positive");
  require(s.dt_min < s.dt_init, "dt_min", "must be smaller than dt_init");
  require(s.dt_init <= s.t_end, "dt_init", "must not exceed t_end");
  require(s.rel_tol > 0.0, "rel_tol", "must be positive");
  require(s.s_max > 0.0, "s_max", "must be positive");
  require(s.tail_max > 0.0 && s.tail_max <= 1.0, "tail_max", "must lie in (0, 1]");
  require(s.sample_interval > 0.0, "sample_interval", "must be positive");
  s.filter.enabled = r.boolean("filter.enabled").value_or(false);
  s.filter.strength = r.real("filter.strength").value_or(s.filter.strength);
  s.filter.order = r.integer<int>("filter.order").value_or(s.filter.order);
  require(s.filter.strength > 0.0, "filter.strength", "must be positive");
  require(s.filter.order >= 2 && s.filter.order % 2 == 0, "filter.order", "must be an even integer >= 2");

  InitialCondition& ic = c.ic;
  ic.kind = r.text("ic.kind").value_or(ic.kind);
  require(ic.kind == "sine" || ic.kind == "multisine" || ic.kind == "bump" || ic.kind == "fourier", "ic.kind",
          "must be one of sine, multisine, bump, fourier");
  ic.amplitude = r.real("ic.amplitude").value_or(ic.amplitude);
  ic.mode = r.integer<int>("ic.mode").value_or(ic.mode);
  require(ic.mode >= 1, "ic.mode", "must be a positive integer");
  require(ic.mode < c.n / 2, "ic.mode", "must be below n/2");
  ic.width = r.real("ic.width").value_or(ic.width);
  require(ic.width > 0.0, "ic.width", "must be positive");
  if (auto coeffs = r.text("ic.coefficients")) ic.coefficients = parse_coefficients(*coeffs);
  require(ic.kind != "multisine" || !ic.coefficients.empty(), "ic.coefficients", "required for ic.kind = multisine");
  for (const auto& t : ic.coefficients) require(t.mode < c.n / 2, "ic.coefficients", "modes must be below n/2");

  if (auto ns = r.text("norms_source")) {
    try {
      c.norms_source = parse_norms_source(*ns);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  c.output_csv = r.text("output_csv").value_or(c.output_csv);
  c.output_json = r.text("output_json").value_or(c.output_json);
  require(!c.output_csv.empty(), "output_csv", "must not be empty");
  c.seed = r.integer<std::uint64_t>("seed").value_or(0);
  return c;
}

nlohmann::json config_to_json(const RunConfig& c) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& t : c.ic.coefficients) coeffs.push_back({t.mode, t.cos_amp, t.sin_amp});
  return {
      {"dealias", dealias_name(c.dealias)},
      {"dt_init", c.controls.dt_init},
      {"dt_min", c.controls.dt_min},
      {"epsilon", c.params.epsilon},
      {"exec", c.exec == kernels::Exec::Parallel ? "parallel" : "serial"},
      {"filter.enabled", c.controls.filter.enabled},
      {"filter.order", c.controls.filter.order},
      {"filter.strength", c.controls.filter.strength},
      {"ic.amplitude", c.ic.amplitude},
      {"ic.coefficients", coeffs},
      {"ic.kind", c.ic.kind},
      {"ic.mode", c.ic.mode},
      {"ic.width", c.ic.width},
      {"mu", c.params.mu},
      {"n", c.n},
      {"norms_source", std::string(to_string(c.norms_source))},
      {"output_csv", c.output_csv},
      {"output_json", c.output_json},
      {"rel_tol", c.controls.rel_tol},
      {"s_max", c.controls.s_max},
      {"sample_interval", c.controls.sample_interval},
      {"seed", c.seed},
      {"t_end", c.controls.t_end},
      {"tail_max", c.controls.tail_max},
  };
}

}  // namespace mswave::cli
