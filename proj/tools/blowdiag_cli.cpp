#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "blowdiag/blowdiag.hpp"

namespace fs = std::filesystem;
using namespace blowdiag;

namespace {

struct Options {
  std::string config_path;
  std::string out_dir;
  std::string series_path;
  std::string report_path;
  std::string t_star;
  std::optional<double> eps0;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::string suite = "all";
};

RunConfig load_config(const Options& o) {
  std::map<std::string, std::string> overrides;
  if (!o.out_dir.empty()) overrides["output.dir"] = o.out_dir;
  if (o.seed) overrides["ic.seed"] = std::to_string(*o.seed);
  if (o.eps0) overrides["criteria.eps0"] = format_double(*o.eps0);
  if (!o.t_star.empty()) overrides["criteria.t_star"] = o.t_star;
  const std::string text = o.config_path.empty() ? std::string() : detail::read_file(o.config_path);
  auto cfg = parse_config(text, overrides);
  for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";
  return cfg;
}

/// Fails before any computation if the output directory cannot be written.
void ensure_writable(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  const std::string probe = dir + "/.blowdiag_write_test";
  {
    std::ofstream os(probe);
    if (!os) throw ConfigError({"output.dir: '" + dir + "' is not writable"});
  }
  fs::remove(probe, ec);
}

void write_json(const nlohmann::ordered_json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    detail::write_file(path, j.dump(2) + "\n");
  }
}

FitOptions fit_options(const RunConfig& cfg) {
  return {cfg.model, cfg.k, cfg.p, cfg.fit_n, cfg.fit_family_size, 1000};
}

int cmd_simulate(const Options& o) {
  const auto cfg = load_config(o);
  ensure_writable(cfg.out_dir);
  const auto state = make_initial_state(cfg);
  SeriesMetadata meta;
  meta.k = cfg.k;
  meta.p = cfg.p;
  meta.seed = cfg.seed;
  meta.config_hash = cfg.hash();
  meta.extra["ic.preset"] = cfg.ic_preset;
  meta.constants = fit_constants(fit_options(cfg));
  const auto res = run(state, cfg.stepper, Recorder::for_initial_state(state, cfg.k, cfg.p), meta);
  write_series(res.series, cfg.csv_path());
  std::cout << "wrote " << cfg.csv_path() << " (" << res.series.size() << " samples, " << res.steps << " steps)\n";
  if (res.blowup_suspected) {
    std::cerr << "blow-up suspected: " << res.message << "; series up to the last finite state was written\n";
    return 2;
  }
  return 0;
}

int cmd_criteria(const Options& o) {
  if (o.series_path.empty()) throw ConfigError({"criteria: --series PATH is required"});
  const auto cfg = load_config(o);
  auto series = read_series(o.series_path);
  std::vector<double> T = cfg.t_star;
  const double t_last = series.samples().back().t;
  if (T.empty())
    for (double off : {1.0, 2.0, 4.0}) T.push_back(t_last + off);
  const auto verdicts = evaluate_criteria(series, cfg.criteria, T, cfg.eps0, cfg.criteria_options);
  write_json(verdict_report(series, verdicts, cfg.criteria_options, cfg.eps0), o.report_path);
  return 0;
}

int cmd_verify(const Options& o) {
  const auto& suites = verify::suites();
  std::vector<std::string> names;
  if (o.suite == "all") {
    for (const auto& [name, fn] : suites) names.push_back(name);
  } else if (suites.count(o.suite)) {
    names.push_back(o.suite);
  } else {
    std::cerr << "unknown suite '" << o.suite << "'; available suites: all";
    for (const auto& [name, fn] : suites) std::cerr << ", " << name;
    std::cerr << "\n";
    return 1;
  }
  nlohmann::ordered_json report = nlohmann::ordered_json::array();
  bool ok = true;
  for (const auto& name : names) {
    for (const auto& c : suites.at(name)()) {
      std::printf("%-4s %-14s %-78s measured=%-12.5g tol=%.3g %s\n", c.passed ? "PASS" : "FAIL", name.c_str(),
                  c.name.c_str(), c.measured, c.tolerance, c.detail.c_str());
      report.push_back({{"suite", name},
                        {"check", c.name},
                        {"passed", c.passed},
                        {"measured", c.measured},
                        {"tolerance", c.tolerance},
                        {"detail", c.detail}});
      ok = ok && c.passed;
    }
  }
  if (!o.report_path.empty()) write_json(report, o.report_path);
  return ok ? 0 : 1;
}

int cmd_synth(const Options& o) {
  const auto cfg = load_config(o);
  const auto prof = checked_synth_profile(cfg);
  ensure_writable(cfg.out_dir);
  auto series = synth(prof);
  series.meta().config_hash = cfg.hash();
  write_series(series, cfg.csv_path());
  std::cout << "wrote " << cfg.csv_path() << " (" << series.size() << " samples)\n";
  return 0;
}

int cmd_fit_constants(const Options& o) {
  const auto cfg = load_config(o);
  const auto c = fit_constants(fit_options(cfg));
  nlohmann::ordered_json j;
  j["tool_version"] = tool_version();
  j["config_hash"] = cfg.hash();
  j["model"] = to_string(cfg.model);
  j["params"] = {{"k", cfg.k}, {"p", cfg.p}, {"N", 2}};
  j["family"] = {{"n", cfg.fit_n}, {"size", cfg.fit_family_size}};
  j["fitted_constants"] = constants_json(c);
  write_json(j, o.report_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral flow simulation and blow-up criterion diagnostics"};
  app.require_subcommand(0, 1);
  Options o;
  bool print_defaults = false;
  app.add_flag("--print-defaults", print_defaults, "Print the default configuration and exit");
  app.add_option("--threads", o.threads, "FFT threads")->check(CLI::PositiveNumber);
  app.set_version_flag("--version", tool_version());

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "Configuration file")->check(CLI::ExistingFile);
    sub->add_option("--threads", o.threads, "FFT threads")->check(CLI::PositiveNumber);
  };
  auto* sim = app.add_subcommand("simulate", "Run a simulation and record the diagnostic series");
  add_common(sim);
  sim->add_option("--out", o.out_dir, "Output directory (overrides output.dir)");
  sim->add_option("--seed", o.seed, "Random initial-condition seed (overrides ic.seed)");

  auto* crit = app.add_subcommand("criteria", "Evaluate criteria on a recorded series");
  add_common(crit);
  crit->add_option("--series", o.series_path, "Series CSV (with its JSON sidecar)")->check(CLI::ExistingFile);
  crit->add_option("--t-star", o.t_star, "Comma-separated candidate blow-up times");
  crit->add_option("--eps0", o.eps0, "epsilon_0 of the log-corrected criterion");
  crit->add_option("--out", o.report_path, "Report file (stdout when omitted)");

  auto* ver = app.add_subcommand("verify", "Run verification suites");
  ver->add_option("suite", o.suite, "Suite name or 'all'");
  ver->add_option("--threads", o.threads, "FFT threads")->check(CLI::PositiveNumber);
  ver->add_option("--out", o.report_path, "JSON report file");

  auto* syn = app.add_subcommand("synth", "Write a synthetic series");
  add_common(syn);
  syn->add_option("--out", o.out_dir, "Output directory (overrides output.dir)");

  auto* fit = app.add_subcommand("fit-constants", "Fit the empirical inequality constants");
  add_common(fit);
  fit->add_option("--out", o.report_path, "Report file (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  if (print_defaults) {
    std::cout << default_config_text();
    return 0;
  }
  try {
    fft::set_threads(o.threads);
    if (sim->parsed()) return cmd_simulate(o);
    if (crit->parsed()) return cmd_criteria(o);
    if (ver->parsed()) return cmd_verify(o);
    if (syn->parsed()) return cmd_synth(o);
    if (fit->parsed()) return cmd_fit_constants(o);
    std::cout << app.help();
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
