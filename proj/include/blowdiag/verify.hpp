#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "blowdiag/criteria.hpp"
#include "blowdiag/fitting.hpp"
#include "blowdiag/initial_conditions.hpp"
#include "blowdiag/series_io.hpp"
#include "blowdiag/simulation.hpp"
#include "blowdiag/synth.hpp"

namespace blowdiag::verify {

/// One measured check: passes when measured ≤ tolerance (or when the flag says so).
struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

inline CheckResult at_most(std::string name, double measured, double tolerance, std::string detail = {}) {
  return {std::move(name), measured <= tolerance, measured, tolerance, std::move(detail)};
}

inline bool all_passed(const std::vector<CheckResult>& r) {
  return std::all_of(r.begin(), r.end(), [](const auto& c) { return c.passed; });
}

namespace detail {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline RunResult simulate(Model model, const Field& q0, double nu, const StepperConfig& cfg, int k, double p) {
  FlowState s{model, q0, nu, 0.0};
  const auto rec = Recorder::for_initial_state(s, k, p);
  SeriesMetadata meta;
  meta.k = k;
  meta.p = p;
  return run(s, cfg, rec, meta);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Steady states
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> steady_states() {
  detail::Stopwatch clock;
  const Grid grid(2, 64);
  std::vector<CheckResult> out;
  const Field v_tg = biot_savart_2d(taylor_green_vorticity(grid));
  out.push_back(at_most("taylor_green euler |alpha_k|, k=3, n=64", std::abs(alpha_k(v_tg, 3)), 1e-8));
  const Field theta = sqg_single_mode(grid, 1);
  out.push_back(at_most("sqg sin x1 |alpha_kp|, k=3, p=2, n=64", std::abs(alpha_kp(theta, 3, 2.0)), 1e-10));
  out.push_back(at_most("sqg sin x1 sup|rhs|, n=64", rhs({Model::sqg, theta, 0.0, 0.0}).max_abs(), 1e-10));
  out.push_back(at_most("runtime seconds", clock.seconds(), 5.0));
  return out;
}

// ---------------------------------------------------------------------------
// Energy-type identities
// ---------------------------------------------------------------------------

/// d/dt log‖D^k v‖_{L²} by central differences of RK4 steps ±h versus α_k.
inline std::vector<CheckResult> alpha_k_identity(int n = 128, int k = 3, double h = 1e-4, std::uint64_t seed = 7) {
  detail::Stopwatch clock;
  const Grid grid(2, n);
  const FlowState s{Model::euler2d, random_smooth_scalar(grid, seed), 0.0, 0.0};
  const double fwd = dk_seminorm_l2(velocity_of(step_rk4(s, h)), k);
  const double bwd = dk_seminorm_l2(velocity_of(step_rk4(s, -h)), k);
  const double fd = (std::log(fwd) - std::log(bwd)) / (2.0 * h);
  const double ak = alpha_k(velocity_of(s), k);
  std::vector<CheckResult> out;
  out.push_back(at_most("euler alpha_k vs finite-difference log-derivative (relative)", detail::rel(ak, fd), 1e-4,
                        "alpha_k=" + format_double(ak) + " fd=" + format_double(fd)));
  out.push_back(at_most("runtime seconds", clock.seconds(), 30.0));
  return out;
}

/// d/dt log‖D^kθ‖_{L^p} by central differences versus α_{k,p}.
inline std::vector<CheckResult> alpha_kp_identity(int n = 64, int k = 3, double p = 2.0, double h = 1e-4,
                                                  std::uint64_t seed = 11) {
  const Grid grid(2, n);
  const FlowState s{Model::sqg, random_smooth_scalar(grid, seed), 0.0, 0.0};
  const double fwd = dk_lp_norm(step_rk4(s, h).prognostic, k, p);
  const double bwd = dk_lp_norm(step_rk4(s, -h).prognostic, k, p);
  const double fd = (std::log(fwd) - std::log(bwd)) / (2.0 * h);
  const double a = alpha_kp(s.prognostic, k, p);
  return {at_most("sqg alpha_kp vs finite-difference log-derivative, p=" + format_double(p) + " (relative)",
                  detail::rel(a, fd), 1e-4, "alpha_kp=" + format_double(a) + " fd=" + format_double(fd))};
}

/// d/dt log‖v‖_{L^p} by central differences versus λ_p for ns2d.
inline std::vector<CheckResult> lambda_p_identity(double p, int n = 64, double nu = 0.01, double h = 1e-4,
                                                  std::uint64_t seed = 13) {
  const Grid grid(2, n);
  const FlowState s{Model::ns2d, random_smooth_scalar(grid, seed), nu, 0.0};
  const double fwd = lp_norm(velocity_of(step_rk4(s, h)), p);
  const double bwd = lp_norm(velocity_of(step_rk4(s, -h)), p);
  const double fd = (std::log(fwd) - std::log(bwd)) / (2.0 * h);
  const double lam = lambda_p(velocity_of(s), p, nu);
  return {at_most("ns2d lambda_p vs finite-difference log-derivative, p=" + format_double(p) + " (relative)",
                  detail::rel(lam, fd), 1e-4, "lambda_p=" + format_double(lam) + " fd=" + format_double(fd))};
}

/// Navier–Stokes Taylor–Green decay: λ_p = −2ν at every sample, the two-sided
/// bound ‖v₀‖e^{−∫|λ_p|} ≤ ‖v‖_p ≤ ‖v₀‖e^{∫|λ_p|}, and ω(1) = ω₀e^{−2ν}.
inline std::vector<CheckResult> ns_taylor_green(int n = 64, double nu = 0.01, double dt = 0.01) {
  detail::Stopwatch clock;
  const Grid grid(2, n);
  const Field w0 = taylor_green_vorticity(grid);
  std::vector<CheckResult> out;
  for (double p : {2.0, 4.0}) {
    StepperConfig cfg;
    cfg.dt = dt;
    cfg.t_end = 1.0;
    const auto res = detail::simulate(Model::ns2d, w0, nu, cfg, 3, p);
    double worst = 0.0, bound_violation = 0.0;
    const auto& S = res.series;
    const auto lam = S.column(Column::lambda_p);
    std::vector<double> abs_lam(lam.size());
    for (std::size_t i = 0; i < lam.size(); ++i) {
      worst = std::max(worst, std::abs(lam[i] + 2.0 * nu));
      abs_lam[i] = std::abs(lam[i]);
    }
    const auto cum = cumulative_trapezoid(S.times(), abs_lam);
    const double v0 = S[0].value(Column::v_lp);
    for (std::size_t i = 0; i < S.size(); ++i) {
      const double v = S[i].value(Column::v_lp);
      const double lo = v0 * std::exp(-cum[i]), hi = v0 * std::exp(cum[i]);
      bound_violation = std::max({bound_violation, (lo - v) / v0, (v - hi) / v0});
    }
    const std::string tag = ", p=" + format_double(p);
    out.push_back(at_most("ns2d taylor_green max|lambda_p + 2 nu|" + tag, worst, 1e-6));
    out.push_back(at_most("ns2d taylor_green two-sided Lp bound excess" + tag, bound_violation, 1e-4));
    if (p == 2.0) {
      Field exact = w0;
      exact *= std::exp(-2.0 * nu * res.final_state.t);
      Field diff = res.final_state.prognostic;
      diff -= exact;
      out.push_back(at_most("ns2d taylor_green |omega(1) - omega0 exp(-2 nu)|_inf", diff.max_abs(), 1e-6));
    }
  }
  for (double p : {2.0, 4.0})
    for (auto& c : lambda_p_identity(p)) out.push_back(c);
  out.push_back(at_most("runtime seconds", clock.seconds(), 60.0));
  return out;
}

// ---------------------------------------------------------------------------
// Exponential representations
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> representations() {
  std::vector<CheckResult> out;
  auto check_run = [&](const std::string& label, const RunResult& res, double tol) {
    const double t_end = res.series.samples().back().t;
    for (double off : {1.0, 2.0, 4.0}) {
      const double r = representation_residual(res.series, t_end + off);
      out.push_back(at_most(label + " representation residual, T*=t_end+" + format_double(off), r, tol));
    }
  };
  {
    StepperConfig cfg;
    cfg.t_end = 1.0;
    const Grid grid(2, 64);
    check_run("euler2d random", detail::simulate(Model::euler2d, random_smooth_scalar(grid, 21), 0.0, cfg, 3, 2.0), 1e-3);
  }
  {
    StepperConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = 1.0;
    const Grid grid(2, 64);
    check_run("ns2d taylor_green p=4", detail::simulate(Model::ns2d, taylor_green_vorticity(grid), 0.01, cfg, 3, 4.0),
              1e-4);
  }
  {
    StepperConfig cfg;
    cfg.t_end = 1.0;
    const Grid grid(2, 64);
    check_run("sqg random k=3 p=2", detail::simulate(Model::sqg, random_smooth_scalar(grid, 31), 0.0, cfg, 3, 2.0),
              1e-3);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Synthetic fixtures
// ---------------------------------------------------------------------------

struct FixtureFamily {
  std::string label;
  Model model;
  int k;
  double p;
  int dim;
};

inline std::vector<FixtureFamily> fixture_families() {
  return {{"euler k=3 N=2", Model::euler2d, 3, 2.0, 2},
          {"euler k=3 N=3", Model::euler2d, 3, 2.0, 3},
          {"ns p=4 N=2", Model::ns2d, 3, 4.0, 2},
          {"ns p=N=2", Model::ns2d, 3, 2.0, 2},
          {"sqg k=3 p=2", Model::sqg, 3, 2.0, 2},
          {"sqg k=2 p=4", Model::sqg, 2, 4.0, 2}};
}

/// classify_trichotomy(synth(P)) against the intended case, 50 draws per case.
inline std::vector<CheckResult> trichotomy_fixtures(int draws = 50, std::uint64_t seed = 2024) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(seed);
  for (const auto& fam : fixture_families()) {
    int wrong = 0, total = 0, case_ii_at_critical = 0;
    std::string first_failure;
    for (auto kind : {SynthKind::self_similar, SynthKind::integrable_deficit, SynthKind::divergent_deficit}) {
      for (int i = 0; i < draws; ++i) {
        const auto prof = draw_profile(kind, fam.model, fam.k, fam.p, fam.dim, rng);
        const auto v = classify_trichotomy(synth(prof), prof.T_star);
        ++total;
        if (v.outcome != intended_case(prof)) {
          ++wrong;
          if (first_failure.empty())
            first_failure = to_string(kind) + " -> " + to_string(v.outcome) + " (expected " +
                            to_string(intended_case(prof)) + ")";
        }
        if (fam.model == Model::ns2d && fam.p == fam.dim && v.outcome == Outcome::case_ii) ++case_ii_at_critical;
      }
    }
    out.push_back(at_most("trichotomy labels wrong, " + fam.label + " (" + std::to_string(total) + " fixtures)", wrong, 0.0,
                          first_failure));
    if (fam.model == Model::ns2d && fam.p == fam.dim)
      out.push_back(at_most("case_ii returned at p=N", case_ii_at_critical, 0.0));
  }
  return out;
}

/// Supporting fixture relations: case (c) elimination and agreement of the
/// integral and lower-bound criteria through the representation.
inline std::vector<CheckResult> criteria_fixtures(int draws = 20, std::uint64_t seed = 77) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(seed);
  int disagreements = 0, case_c = 0, residual_fail = 0;
  double worst_residual = 0.0;
  for (const auto& fam : fixture_families()) {
    const bool critical = fam.model == Model::ns2d && fam.p == fam.dim;
    for (int i = 0; i < draws; ++i) {
      auto prof = draw_profile(SynthKind::divergent_deficit, fam.model, fam.k, fam.p, fam.dim, rng);
      prof.amplitude = -prof.amplitude;
      const auto s = synth(prof);
      if (eval_lower_bound(s, prof.T_star).outcome != Outcome::violated) ++case_c;
      const auto d = synth(draw_profile(critical ? SynthKind::self_similar : SynthKind::decaying, fam.model, fam.k, fam.p,
                                        fam.dim, rng));
      const double T = std::stod(d.meta().extra.at("T_star"));
      const bool integral_diverges = eval_integral_condition(d, T).outcome == Outcome::violated;
      const bool y_vanishes = eval_lower_bound(d, T).outcome == Outcome::violated;
      if (integral_diverges != y_vanishes) ++disagreements;
      for (const auto* series : {&s, &d}) {
        const double T_s = std::stod(series->meta().extra.at("T_star"));
        const double r = representation_residual(*series, T_s);
        worst_residual = std::max(worst_residual, r);
        if (r > 1e-12) ++residual_fail;
      }
    }
  }
  out.push_back(at_most("negative divergent deficit not reported violated by lower_bound", case_c, 0.0));
  out.push_back(at_most("integral_condition / lower_bound disagreements", disagreements, 0.0));
  out.push_back(at_most("synthetic representation residual", worst_residual, 1e-12));
  return out;
}

// ---------------------------------------------------------------------------
// Osgood
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> osgood() {
  std::vector<CheckResult> out;
  struct Case {
    std::string name;
    std::function<double(double)> g;
    OsgoodVerdict expected;
  };
  const std::vector<Case> cases = {
      {"s^2", [](double s) { return s * s; }, OsgoodVerdict::osgood},
      {"s log^2(s+e)", [](double s) { return s * std::pow(std::log(s + std::numbers::e), 2); }, OsgoodVerdict::osgood},
      {"s", [](double s) { return s; }, OsgoodVerdict::not_osgood},
      {"1", [](double) { return 1.0; }, OsgoodVerdict::not_osgood}};
  for (const auto& c : cases) {
    const auto r = osgood_check(c.g);
    out.push_back({"osgood_check g=" + c.name + " -> " + to_string(r.verdict), r.verdict == c.expected,
                   r.tail_exponent, 0.0, "expected " + to_string(c.expected)});
    if (c.name == "s^2")
      out.push_back(at_most("osgood_check g=s^2 partial integral error", std::abs(r.partial_integral - 1.0), 1e-6));
  }

  struct Weighted {
    std::string name;
    std::function<double(double)> g;
    std::function<double(double, double)> exact;  ///< ∫_{s1}^{s2} ds/g
  };
  const std::vector<Weighted> weighted = {
      {"s^2", [](double s) { return s * s; }, [](double a, double b) { return 1.0 / a - 1.0 / b; }},
      {"s^1.5", [](double s) { return std::pow(s, 1.5); },
       [](double a, double b) { return 2.0 * (1.0 / std::sqrt(a) - 1.0 / std::sqrt(b)); }},
      {"s^3", [](double s) { return s * s * s; }, [](double a, double b) { return 0.5 * (1.0 / (a * a) - 1.0 / (b * b)); }}};
  std::mt19937_64 rng(99);
  for (const auto& w : weighted) {
    double worst = 0.0;
    for (const auto& fam : {FixtureFamily{"", Model::euler2d, 3, 2.0, 2}, FixtureFamily{"", Model::ns2d, 3, 4.0, 2},
                            FixtureFamily{"", Model::sqg, 3, 2.0, 2}}) {
      auto prof = draw_profile(SynthKind::divergent_deficit, fam.model, fam.k, fam.p, fam.dim, rng);
      prof.amplitude = 1.0 + std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      const auto s = synth(prof);
      const auto r = osgood_weighted_integral(s, prof.T_star, w.g);
      worst = std::max(worst, detail::rel(r.value, w.exact(r.s_start, r.s_end)));
    }
    out.push_back(at_most("osgood_weighted_integral vs substitution, g=" + w.name + " (relative)", worst, 1e-4));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Inequality studies
// ---------------------------------------------------------------------------

/// gn_ratio on single modes sin(m x₁) must decrease in m.
inline std::vector<CheckResult> gn_single_modes() {
  const Grid grid(2, 64);
  std::vector<double> r;
  std::string detail;
  for (int m : {1, 2, 4, 8, 16}) {
    r.push_back(*gn_ratio(sqg_single_mode(grid, m), 3, 2.0));
    detail += (detail.empty() ? "" : ", ") + format_double(r.back());
  }
  int increases = 0;
  for (std::size_t i = 1; i < r.size(); ++i)
    if (!(r[i] < r[i - 1])) ++increases;
  return {at_most("gn_ratio non-decreasing steps over m in {1,2,4,8,16}", increases, 0.0, detail)};
}

/// Fit on one family, count held-out members exceeding 1.05× the fitted constant.
inline std::vector<CheckResult> held_out_constants(int family_size = 100, int n = 32, int k = 3, double p = 2.0) {
  FitOptions fit{Model::euler2d, k, p, n, family_size, 1000};
  FitOptions held = fit;
  held.seed = 500000;
  const Grid grid(2, n);
  std::vector<CheckResult> out;

  const double C = fit_commutator(fit);
  int violations = 0;
  for (int i = 0; i < family_size; ++i) {
    const auto r = commutator_ratio(family_scalar(grid, held.seed, 2 * i), family_scalar(grid, held.seed, 2 * i + 1), k, p);
    if (r && *r > 1.05 * C) ++violations;
  }
  out.push_back(at_most("commutator held-out violations at 1.05 x " + format_double(C), violations, 0.0));

  // |α_k| ≤ ‖[D^k, v·∇]v‖/‖D^k v‖, so the fitted commutator constant bounds α_k against ‖∇v‖_∞.
  violations = 0;
  for (int i = 0; i < family_size; ++i) {
    const Field v = random_divergence_free(grid, held.seed + static_cast<std::uint64_t>(i), family_slope(i));
    if (std::abs(alpha_k(v, k)) > 1.05 * C * grad_linf(v)) ++violations;
  }
  out.push_back(at_most("|alpha_k| <= C_fit |grad v|_inf held-out violations at 1.05 x " + format_double(C), violations,
                        0.0));
  return out;
}

inline std::vector<CheckResult> inequalities() {
  auto out = gn_single_modes();
  for (auto& c : held_out_constants()) out.push_back(c);
  return out;
}

/// Fitted constants for each model family, as a table of checks that always pass.
inline std::vector<CheckResult> constants_table(int family_size = 100, int n = 32) {
  std::vector<CheckResult> out;
  for (auto [model, p] : {std::pair{Model::euler2d, 2.0}, std::pair{Model::sqg, 2.0}}) {
    const auto c = fit_constants({model, 3, p, n, family_size, 1000});
    const std::string tag = to_string(model) + " k=3 p=" + format_double(p) + ": ";
    auto put = [&](const char* name, const std::optional<double>& v) {
      if (v) out.push_back({tag + name, true, *v, 0.0, "fitted"});
    };
    put("commutator", c.commutator);
    put("gn", c.gn);
    put("alpha_bound", c.alpha_bound);
    put("growth C_kN", c.growth);
    put("K", c.K);
  }
  // The direct sup of |α_k|/‖∇v‖_∞ is heavy-tailed; report how often a disjoint family exceeds it.
  const FitOptions fit{Model::euler2d, 3, 2.0, n, family_size, 1000};
  const double Chat = fit_alpha_bound(fit);
  const Grid grid(2, n);
  int above = 0;
  for (int i = 0; i < family_size; ++i) {
    const Field v = random_divergence_free(grid, 500000 + static_cast<std::uint64_t>(i), family_slope(i));
    if (std::abs(alpha_k(v, 3)) > 1.05 * Chat * grad_linf(v)) ++above;
  }
  out.push_back({"euler2d direct alpha_bound held-out members above 1.05 x fit", true, static_cast<double>(above), 0.0,
                 "informational"});
  return out;
}

// ---------------------------------------------------------------------------
// Conservation
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> conservation(int n = 128) {
  std::vector<CheckResult> out;
  const Grid grid(2, n);
  StepperConfig cfg;
  cfg.t_end = 1.0;
  cfg.record_every = 1 << 30;
  {
    FlowState s{Model::euler2d, random_smooth_scalar(grid, 41), 0.0, 0.0};
    const double e0 = lp_norm(velocity_of(s), 2.0);
    const auto res = run(s, cfg, Recorder::for_initial_state(s, 3, 2.0), {});
    const double e1 = lp_norm(velocity_of(res.final_state), 2.0);
    out.push_back(at_most("euler2d energy drift over unit time (relative)", detail::rel(e1, e0), 1e-5));
  }
  {
    FlowState s{Model::sqg, random_smooth_scalar(grid, 43), 0.0, 0.0};
    const auto res = run(s, cfg, Recorder::for_initial_state(s, 3, 2.0), {});
    const Field& th0 = s.prognostic;
    const Field& th1 = res.final_state.prognostic;
    for (double p : {2.0, 4.0})
      out.push_back(at_most("sqg |theta|_L" + format_double(p) + " drift over unit time (relative)",
                            detail::rel(lp_norm(th1, p), lp_norm(th0, p)), 1e-5));
    out.push_back(at_most("sqg |theta|_Linf drift over unit time (relative)",
                          detail::rel(sup_norm_refined(th1), sup_norm_refined(th0)), 1e-5));
  }
  {
    // d/dt ‖v‖² = −2ν‖∇v‖², central difference over two RK4 steps of ±h.
    const double nu = 0.01, h = 1e-4;
    FlowState s{Model::ns2d, random_smooth_scalar(grid, 45), nu, 0.0};
    const auto energy = [](const FlowState& q) { return std::pow(lp_norm(velocity_of(q), 2.0), 2.0); };
    const double fd = (energy(step_rk4(s, h)) - energy(step_rk4(s, -h))) / (2.0 * h);
    const double exact = -2.0 * nu * std::pow(lp_norm(gradient(velocity_of(s)), 2.0), 2.0);
    out.push_back(at_most("ns2d d/dt |v|^2 vs -2 nu |grad v|^2 (relative)", detail::rel(fd, exact), 1e-5));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pointwise bounds
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> pointwise_bounds(int count = 20) {
  double worst3 = -1e300, worst_sqg = -1e300;
  const Grid g3(3, 16), g2(2, 32);
  for (int i = 0; i < count; ++i) {
    const Field v = random_divergence_free(g3, 700 + static_cast<std::uint64_t>(i), family_slope(i), 5);
    worst3 = std::max(worst3, alpha_local(v).max_abs() - grad_linf(v));
    const Field th = random_smooth_scalar(g2, 800 + static_cast<std::uint64_t>(i), family_slope(i));
    worst_sqg = std::max(worst_sqg, alpha_hat_local(th).max_abs() - grad_linf(sqg_velocity(th)));
  }
  return {at_most("max(|alpha|_inf - |grad v|_inf) over 3D fields", worst3, 1e-12),
          at_most("max(|alpha_hat|_inf - |grad v|_inf) over sqg fields", worst_sqg, 1e-12)};
}

// ---------------------------------------------------------------------------
// Determinism
// ---------------------------------------------------------------------------

inline std::string simulate_csv(std::uint64_t seed) {
  const Grid grid(2, 32);
  StepperConfig cfg;
  cfg.t_end = 0.2;
  FlowState s{Model::euler2d, random_smooth_scalar(grid, seed), 0.0, 0.0};
  return series_csv(run(s, cfg, Recorder::for_initial_state(s, 3, 2.0), {}).series);
}

inline std::vector<CheckResult> determinism() {
  const auto a = simulate_csv(5), b = simulate_csv(5);
  return {{"repeated runs give byte-identical CSV", a == b && !a.empty(), a == b ? 0.0 : 1.0, 0.0,
           std::to_string(a.size()) + " bytes"}};
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

inline const std::map<std::string, std::function<std::vector<CheckResult>()>>& suites() {
  static const std::map<std::string, std::function<std::vector<CheckResult>()>> s = {
      {"identities",
       [] {
         std::vector<CheckResult> out;
         for (auto part : {steady_states(), alpha_k_identity(), alpha_kp_identity(), ns_taylor_green(), representations()})
           out.insert(out.end(), part.begin(), part.end());
         return out;
       }},
      {"conservation", [] { return conservation(); }},
      {"constants", [] { return constants_table(); }},
      {"fixtures",
       [] {
         auto out = trichotomy_fixtures();
         for (auto part : {criteria_fixtures(), osgood()}) out.insert(out.end(), part.begin(), part.end());
         return out;
       }},
      {"inequalities",
       [] {
         auto out = inequalities();
         auto pb = pointwise_bounds();
         out.insert(out.end(), pb.begin(), pb.end());
         return out;
       }},
      {"determinism", [] { return determinism(); }},
  };
  return s;
}

}  // namespace blowdiag::verify
