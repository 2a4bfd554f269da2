#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "blowdiag/criteria.hpp"
#include "blowdiag/initial_conditions.hpp"
#include "blowdiag/series_io.hpp"
#include "blowdiag/synth.hpp"

namespace blowdiag {

/// Every validation problem found in a config, reported together.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems)
      : std::runtime_error(join(problems)), problems_(std::move(problems)) {}
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  static std::string join(const std::vector<std::string>& p) {
    std::string s = "invalid configuration:";
    for (const auto& x : p) s += "\n  - " + x;
    return s;
  }
  std::vector<std::string> problems_;
};

struct ConfigKey {
  const char* key;
  const char* default_value;
  const char* help;
};

/// Schema of the key = value config format; sections prefix the keys.
inline const std::vector<ConfigKey>& config_schema() {
  static const std::vector<ConfigKey> schema = {
      {"run.model", "euler2d", "euler2d | ns2d | sqg"},
      {"run.n", "64", "grid points per axis (power of two, >= 8)"},
      {"run.nu", "0", "viscosity; nonzero only for ns2d"},
      {"run.k", "3", "derivative order of the Sobolev diagnostics"},
      {"run.p", "2", "Lebesgue exponent, >= 2"},
      {"ic.preset", "taylor_green_2d", "taylor_green_2d | random_smooth | sqg_single_mode | raw_file"},
      {"ic.seed", "1", "seed of random_smooth"},
      {"ic.slope", "4", "spectral slope of random_smooth: amplitudes ~ |xi|^-slope"},
      {"ic.amplitude", "1", "amplitude (RMS for random_smooth)"},
      {"ic.kcut", "-1", "largest wavenumber of random_smooth; -1 picks min(8, n/3 - 1)"},
      {"ic.mode", "1", "wavenumber m of sqg_single_mode: A sin(m x1)"},
      {"ic.path", "", "raw grid file for raw_file"},
      {"stepper.dt", "auto", "fixed step, or auto for CFL control"},
      {"stepper.cfl_safety", "0.5", "CFL number in (0, 1]"},
      {"stepper.t_end", "1", "final time"},
      {"stepper.record_every", "1", "steps between recorded samples"},
      {"output.dir", ".", "output directory"},
      {"output.name", "series", "base name of output files"},
      {"criteria.list", "lower_bound,integral_condition,log_corrected,trichotomy,representation",
       "comma-separated criterion ids"},
      {"criteria.t_star", "", "comma-separated candidate T*; empty uses t_end + {1, 2, 4}"},
      {"criteria.eps0", "2", "epsilon_0 > 1 of the log-corrected criterion"},
      {"criteria.tol", "1e-3", "equality tolerance on (T*-t)*deficit"},
      {"criteria.window", "0.2", "trailing window fraction"},
      {"criteria.K", "", "lower-bound threshold; empty uses the fitted constant"},
      {"fit.family_size", "100", "random fields per fitting family"},
      {"fit.n", "32", "grid size of fitting families"},
      {"synth.kind", "self_similar", "self_similar | decaying | integrable_deficit | divergent_deficit | log_corrected"},
      {"synth.dim", "2", "space dimension N of the synthetic series"},
      {"synth.T_star", "1", "blow-up time of the fixture"},
      {"synth.Y0", "1", "initial value of Y"},
      {"synth.amplitude", "1", "deficit amplitude A (oscillation depth for log_corrected)"},
      {"synth.exponent", "0.5", "beta of integrable_deficit"},
      {"synth.eps0", "2", "epsilon_0 of log_corrected"},
      {"synth.per_octave", "64", "samples per halving of T*-t"},
      {"synth.tau_min", "1e-8", "smallest (T*-t)/T*"},
  };
  return schema;
}

inline std::string default_config_text() {
  std::string out;
  std::string section;
  for (const auto& k : config_schema()) {
    const std::string key = k.key;
    const auto dot = key.find('.');
    const std::string sec = key.substr(0, dot);
    if (sec != section) {
      if (!section.empty()) out += '\n';
      out += "[" + sec + "]\n";
      section = sec;
    }
    out += "# " + std::string(k.help) + "\n";
    out += key.substr(dot + 1) + " = " + k.default_value + "\n";
  }
  return out;
}

struct RunConfig {
  Model model = Model::euler2d;
  int n = 64;
  double nu = 0.0;
  int k = 3;
  double p = 2.0;

  std::string ic_preset = "taylor_green_2d";
  std::uint64_t seed = 1;
  double slope = 4.0;
  double amplitude = 1.0;
  int kcut = -1;
  int mode = 1;
  std::string ic_path;

  StepperConfig stepper;

  std::string out_dir = ".";
  std::string out_name = "series";

  std::vector<std::string> criteria;
  std::vector<double> t_star;
  double eps0 = 2.0;
  CriteriaOptions criteria_options;

  int fit_family_size = 100;
  int fit_n = 32;

  SyntheticProfile synth;

  std::map<std::string, std::string> values;  ///< resolved key → value, defaults included
  std::vector<std::string> warnings;

  /// Canonical "key = value" listing of the resolved configuration; output.* is
  /// left out so the hash names the computation, not its location.
  std::string canonical() const {
    std::string s;
    for (const auto& [k, v] : values)
      if (k.rfind("output.", 0) != 0) s += k + " = " + v + "\n";
    return s;
  }
  std::string hash() const { return fnv1a_hex(canonical()); }

  std::string csv_path() const { return out_dir + "/" + out_name + ".csv"; }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  for (auto& x : split(s, ',')) {
    auto t = trim(x);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

}  // namespace detail

/// Resolves config text against the schema and validates it. Overrides
/// (key → value) are applied after the text, e.g. from command-line flags.
inline RunConfig parse_config(const std::string& text, const std::map<std::string, std::string>& overrides = {}) {
  std::vector<std::string> errors;
  std::map<std::string, std::string> values;
  for (const auto& k : config_schema()) values[k.key] = k.default_value;

  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back(where + ": malformed section header");
        continue;
      }
      section = detail::trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back(where + ": expected 'key = value'");
      continue;
    }
    std::string key = detail::trim(line.substr(0, eq));
    if (!section.empty()) key = section + "." + key;
    if (!values.count(key)) {
      errors.push_back(where + ": unknown key '" + key + "'");
      continue;
    }
    values[key] = detail::trim(line.substr(eq + 1));
  }
  for (const auto& [k, v] : overrides) {
    if (!values.count(k)) {
      errors.push_back("unknown override key '" + k + "'");
      continue;
    }
    values[k] = v;
  }

  RunConfig cfg;
  cfg.values = values;
  auto num = [&](const std::string& key) -> std::optional<double> {
    try {
      return detail::parse_double(values[key], key);
    } catch (const std::exception&) {
      errors.push_back(key + ": expected a number, got '" + values[key] + "'");
      return std::nullopt;
    }
  };
  auto integer = [&](const std::string& key) -> std::optional<long long> {
    const auto v = num(key);
    if (!v) return std::nullopt;
    if (*v != std::floor(*v)) {
      errors.push_back(key + ": expected an integer, got '" + values[key] + "'");
      return std::nullopt;
    }
    return static_cast<long long>(*v);
  };
  auto check = [&](bool ok, const std::string& msg) {
    if (!ok) errors.push_back(msg);
  };

  try {
    cfg.model = parse_model(values["run.model"]);
  } catch (const std::exception& e) {
    errors.push_back(std::string("run.model: ") + e.what());
  }
  if (auto v = integer("run.n")) {
    cfg.n = static_cast<int>(*v);
    try {
      Grid(2, cfg.n);
    } catch (const std::exception& e) {
      errors.push_back(std::string("run.n: ") + e.what());
    }
  }
  if (auto v = num("run.nu")) {
    cfg.nu = *v;
    check(cfg.nu >= 0.0, "run.nu: must be >= 0");
    check(cfg.nu == 0.0 || cfg.model == Model::ns2d, "run.nu: must be 0 unless run.model = ns2d");
  }
  if (auto v = integer("run.k")) {
    cfg.k = static_cast<int>(*v);
    check(cfg.k >= 1 && cfg.k <= 6, "run.k: must be in [1, 6]");
  }
  if (auto v = num("run.p")) {
    cfg.p = *v;
    check(cfg.p >= 2.0, "run.p: must be >= 2");
  }

  cfg.ic_preset = values["ic.preset"];
  if (cfg.ic_preset == "zero") {
    errors.push_back("ic.preset: zero initial data is rejected; the criteria require nonzero initial data");
  } else {
    check(cfg.ic_preset == "taylor_green_2d" || cfg.ic_preset == "random_smooth" ||
              cfg.ic_preset == "sqg_single_mode" || cfg.ic_preset == "raw_file",
          "ic.preset: unknown preset '" + cfg.ic_preset + "'");
  }
  if (auto v = integer("ic.seed")) {
    check(*v >= 0, "ic.seed: must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(*v);
  }
  if (auto v = num("ic.slope")) cfg.slope = *v;
  if (auto v = num("ic.amplitude")) {
    cfg.amplitude = *v;
    check(cfg.amplitude != 0.0, "ic.amplitude: must be nonzero");
  }
  if (auto v = integer("ic.kcut")) cfg.kcut = static_cast<int>(*v);
  if (auto v = integer("ic.mode")) {
    cfg.mode = static_cast<int>(*v);
    check(cfg.mode >= 1, "ic.mode: must be >= 1");
  }
  cfg.ic_path = values["ic.path"];
  check(cfg.ic_preset != "raw_file" || !cfg.ic_path.empty(), "ic.path: required for raw_file");

  if (values["stepper.dt"] != "auto") {
    if (auto v = num("stepper.dt")) {
      cfg.stepper.dt = *v;
      check(*v > 0.0, "stepper.dt: must be > 0 or auto");
    }
  }
  if (auto v = num("stepper.cfl_safety")) {
    cfg.stepper.cfl_safety = *v;
    check(*v > 0.0 && *v <= 1.0, "stepper.cfl_safety: must be in (0, 1]");
  }
  if (auto v = num("stepper.t_end")) {
    cfg.stepper.t_end = *v;
    check(*v > 0.0, "stepper.t_end: must be > 0");
  }
  if (auto v = integer("stepper.record_every")) {
    cfg.stepper.record_every = static_cast<int>(*v);
    check(*v >= 1, "stepper.record_every: must be >= 1");
  }

  cfg.out_dir = values["output.dir"];
  cfg.out_name = values["output.name"];
  check(!cfg.out_dir.empty(), "output.dir: must not be empty");
  check(!cfg.out_name.empty() && cfg.out_name.find('/') == std::string::npos, "output.name: must be a plain file name");

  cfg.criteria = detail::split_list(values["criteria.list"]);
  for (const auto& id : cfg.criteria)
    check(std::find(criterion_ids().begin(), criterion_ids().end(), id) != criterion_ids().end(),
          "criteria.list: unknown criterion '" + id + "'");
  for (const auto& s : detail::split_list(values["criteria.t_star"])) {
    try {
      cfg.t_star.push_back(detail::parse_double(s, "criteria.t_star"));
    } catch (const std::exception&) {
      errors.push_back("criteria.t_star: cannot parse '" + s + "'");
    }
  }
  if (auto v = num("criteria.eps0")) {
    cfg.eps0 = *v;
    check(*v > 1.0, "criteria.eps0: must be > 1");
  }
  if (auto v = num("criteria.tol")) {
    cfg.criteria_options.tol = *v;
    check(*v > 0.0, "criteria.tol: must be > 0");
  }
  if (auto v = num("criteria.window")) {
    cfg.criteria_options.window_fraction = *v;
    check(*v > 0.0 && *v <= 1.0, "criteria.window: must be in (0, 1]");
  }
  if (!values["criteria.K"].empty())
    if (auto v = num("criteria.K")) cfg.criteria_options.K = *v;

  if (auto v = integer("fit.family_size")) {
    cfg.fit_family_size = static_cast<int>(*v);
    check(*v >= 2, "fit.family_size: must be >= 2");
  }
  if (auto v = integer("fit.n")) {
    cfg.fit_n = static_cast<int>(*v);
    try {
      Grid(2, cfg.fit_n);
    } catch (const std::exception& e) {
      errors.push_back(std::string("fit.n: ") + e.what());
    }
  }

  try {
    cfg.synth.kind = parse_synth_kind(values["synth.kind"]);
  } catch (const std::exception& e) {
    errors.push_back(std::string("synth.kind: ") + e.what());
  }
  cfg.synth.model = cfg.model;
  cfg.synth.k = cfg.k;
  cfg.synth.p = cfg.p;
  if (auto v = integer("synth.dim")) cfg.synth.dim = static_cast<int>(*v);
  if (auto v = num("synth.T_star")) cfg.synth.T_star = *v;
  if (auto v = num("synth.Y0")) cfg.synth.Y0 = *v;
  if (auto v = num("synth.amplitude")) cfg.synth.amplitude = *v;
  if (auto v = num("synth.exponent")) cfg.synth.exponent = *v;
  if (auto v = num("synth.eps0")) cfg.synth.eps0 = *v;
  if (auto v = integer("synth.per_octave")) cfg.synth.per_octave = static_cast<int>(*v);
  if (auto v = num("synth.tau_min")) cfg.synth.tau_min = *v;

  if (!errors.empty()) throw ConfigError(errors);

  if (!k_admissible(cfg.model, cfg.k, cfg.p, 2)) {
    cfg.warnings.push_back(cfg.model == Model::sqg ? "run.k: k > 2/p + 1 is assumed by the SQG criteria"
                                                   : "run.k: k > N/2 + 1 is assumed by the Sobolev criteria");
  }
  return cfg;
}

/// Synthetic profile with its own validation folded into ConfigError.
inline SyntheticProfile checked_synth_profile(const RunConfig& cfg) {
  try {
    cfg.synth.validate();
  } catch (const std::exception& e) {
    throw ConfigError({e.what()});
  }
  return cfg.synth;
}

/// Initial state for a simulate run.
inline FlowState make_initial_state(const RunConfig& cfg) {
  const Grid grid(2, cfg.n);
  Field q(grid, 1);
  if (cfg.ic_preset == "taylor_green_2d") {
    q = taylor_green_vorticity(grid, cfg.amplitude);
  } else if (cfg.ic_preset == "random_smooth") {
    q = random_smooth_scalar(grid, cfg.seed, cfg.slope, cfg.kcut, cfg.amplitude);
  } else if (cfg.ic_preset == "sqg_single_mode") {
    q = sqg_single_mode(grid, cfg.mode, cfg.amplitude);
  } else if (cfg.ic_preset == "raw_file") {
    q = read_raw_grid(cfg.ic_path);
    if (q.grid().dim() != 2 || q.components() != 1)
      throw ConfigError({"ic.path: raw grid must hold a 2D scalar field"});
    if (q.grid().n() != cfg.n)
      throw ConfigError({"ic.path: raw grid has n = " + std::to_string(q.grid().n()) + " but run.n = " +
                         std::to_string(cfg.n)});
  } else {
    throw ConfigError({"ic.preset: unknown preset '" + cfg.ic_preset + "'"});
  }
  if (q.max_abs() == 0.0) throw ConfigError({"initial data is identically zero"});
  FlowState s{cfg.model, q, cfg.nu, 0.0};
  s.validate();
  return s;
}

}  // namespace blowdiag
