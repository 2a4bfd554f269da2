#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "blowdiag/diagnostics.hpp"
#include "blowdiag/flow_models.hpp"

namespace blowdiag {

struct RunResult {
  DiagnosticSeries series;
  FlowState final_state;
  std::size_t steps = 0;
  bool blowup_suspected = false;  ///< the state became non-finite; series holds the samples before it
  std::string message;
};

/// Integrates state to cfg.t_end with RK4, recording the initial state and
/// every cfg.record_every steps (and the final state).
inline RunResult run(FlowState state, const StepperConfig& cfg, const Recorder& recorder, SeriesMetadata meta) {
  state.validate();
  cfg.validate();
  if (!(cfg.t_end > state.t)) throw std::invalid_argument("run: t_end must exceed the initial time");
  meta.model = state.model;
  meta.nu = state.nu;
  meta.dim = state.prognostic.grid().dim();
  meta.n = state.prognostic.grid().n();
  meta.base_norm = recorder.base_norm();
  meta.k = recorder.k();
  meta.p = recorder.p();

  RunResult res{DiagnosticSeries(meta), state, 0, false, {}};
  res.series.append(recorder(state));
  bool recorded_last = true;
  while (cfg.t_end - state.t > 1e-12 * std::max(1.0, std::abs(cfg.t_end))) {
    double dt = stable_dt(state, cfg);
    const double remaining = cfg.t_end - state.t;
    if (dt >= remaining || remaining - dt < 1e-9 * dt) dt = remaining;
    // Overflow can surface inside an intermediate stage as a domain_error.
    std::optional<FlowState> next_opt;
    try {
      next_opt = step_rk4(state, dt);
    } catch (const std::domain_error&) {
    }
    if (!next_opt || !next_opt->prognostic.all_finite()) {
      res.blowup_suspected = true;
      res.message = "non-finite state after step " + std::to_string(res.steps + 1) + " at t = " + std::to_string(state.t + dt);
      break;
    }
    FlowState next = std::move(*next_opt);
    if (dt == remaining) next.t = cfg.t_end;
    state = std::move(next);
    ++res.steps;
    recorded_last = false;
    if (res.steps % static_cast<std::size_t>(cfg.record_every) == 0) {
      res.series.append(recorder(state));
      recorded_last = true;
    }
  }
  if (!recorded_last) res.series.append(recorder(state));
  res.final_state = state;
  return res;
}

}  // namespace blowdiag
