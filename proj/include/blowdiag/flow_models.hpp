#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "blowdiag/spectral.hpp"

namespace blowdiag {

enum class Model { euler2d, ns2d, sqg };

inline std::string to_string(Model m) {
  switch (m) {
    case Model::euler2d: return "euler2d";
    case Model::ns2d: return "ns2d";
    case Model::sqg: return "sqg";
  }
  return "unknown";
}

inline Model parse_model(std::string_view s) {
  if (s == "euler2d") return Model::euler2d;
  if (s == "ns2d") return Model::ns2d;
  if (s == "sqg") return Model::sqg;
  throw std::invalid_argument("unknown model '" + std::string(s) + "' (expected euler2d, ns2d or sqg)");
}

/// Prognostic state: vorticity for euler2d/ns2d, temperature θ for sqg.
struct FlowState {
  Model model = Model::euler2d;
  Field prognostic;
  double nu = 0.0;
  double t = 0.0;

  void validate() const {
    prognostic.require_scalar("FlowState");
    if (prognostic.grid().dim() != 2) throw std::invalid_argument("FlowState: time evolution is 2D only");
    if (nu < 0.0) throw std::invalid_argument("FlowState: nu must be >= 0");
    if (nu != 0.0 && model != Model::ns2d) throw std::invalid_argument("FlowState: nu must be 0 unless model is ns2d");
    if (model != Model::sqg) {
      const double scale = std::max(1.0, prognostic.max_abs());
      if (std::abs(prognostic.mean()) > 1e-10 * scale)
        throw std::invalid_argument("FlowState: vorticity must be mean-free");
    }
  }
};

struct StepperConfig {
  std::optional<double> dt;  ///< fixed step; CFL-controlled when empty
  double cfl_safety = 0.5;
  double t_end = 1.0;
  int record_every = 1;

  void validate() const {
    if (dt && !(*dt > 0.0)) throw std::invalid_argument("StepperConfig: dt must be > 0");
    if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) throw std::invalid_argument("StepperConfig: cfl_safety must be in (0, 1]");
    if (record_every < 1) throw std::invalid_argument("StepperConfig: record_every must be >= 1");
  }
};

/// v = R⊥θ = (−R₂θ, R₁θ).
inline Field sqg_velocity(const Field& theta) {
  const Spectrum s = transform(theta);
  Spectrum v(theta.grid(), 2);
  for_each_mode(theta.grid(), [&](std::size_t idx, const Index3& xi) {
    const double k2 = norm_sq(xi);
    if (k2 == 0.0) return;
    const double k = std::sqrt(k2);
    v(0, idx) = -complex(0.0, xi[1] / k) * s(0, idx);
    v(1, idx) = complex(0.0, xi[0] / k) * s(0, idx);
  });
  return inverse(v);
}

inline Field velocity_of(const FlowState& state) {
  return state.model == Model::sqg ? sqg_velocity(state.prognostic) : biot_savart_2d(state.prognostic);
}

/// Dealiased (v·∇)v for a 2D or 3D velocity.
inline Field nonlinear_term(const Field& v) {
  v.require_vector("nonlinear_term");
  return advect(v, v);
}

/// Time derivative of the prognostic: −(v·∇)q (+ νΔω for ns2d), dealiased.
inline Field rhs(const FlowState& state) {
  const Field v = velocity_of(state);
  Spectrum adv = advect_spectrum(v, state.prognostic);
  const bool viscous = state.model == Model::ns2d && state.nu != 0.0;
  const Spectrum q = viscous ? dealias(transform(state.prognostic)) : Spectrum(state.prognostic.grid(), 1);
  for_each_mode(state.prognostic.grid(), [&](std::size_t idx, const Index3& xi) {
    complex r = -adv(0, idx);
    if (viscous) r -= state.nu * norm_sq(xi) * q(0, idx);
    adv(0, idx) = r;
  });
  return inverse(adv);
}

/// Largest magnitude of the velocity on the grid.
inline double max_speed(const Field& v) { return lp_norm(v, std::numeric_limits<double>::infinity()); }

/// Step satisfying dt·max|v|/spacing ≤ cfl_safety, plus an explicit
/// diffusion bound for ns2d.
inline double stable_dt(const FlowState& state, const StepperConfig& cfg) {
  if (cfg.dt) return *cfg.dt;
  const Grid& grid = state.prognostic.grid();
  const double speed = max_speed(velocity_of(state));
  double dt = speed > 0.0 ? cfg.cfl_safety * grid.spacing() / speed : cfg.t_end;
  if (state.model == Model::ns2d && state.nu > 0.0) {
    const double kmax = grid.n() / 3.0;
    dt = std::min(dt, cfg.cfl_safety * 2.5 / (state.nu * 2.0 * kmax * kmax));
  }
  return dt;
}

/// Classical fourth-order Runge–Kutta step.
inline FlowState step_rk4(const FlowState& state, double dt) {
  auto at = [&](const Field& q) {
    FlowState s = state;
    s.prognostic = q;
    return s;
  };
  const Field& q0 = state.prognostic;
  const Field k1 = rhs(state);
  Field q = q0;
  q.axpy(0.5 * dt, k1);
  const Field k2 = rhs(at(q));
  q = q0;
  q.axpy(0.5 * dt, k2);
  const Field k3 = rhs(at(q));
  q = q0;
  q.axpy(dt, k3);
  const Field k4 = rhs(at(q));

  FlowState next = state;
  next.prognostic.axpy(dt / 6.0, k1);
  next.prognostic.axpy(dt / 3.0, k2);
  next.prognostic.axpy(dt / 3.0, k3);
  next.prognostic.axpy(dt / 6.0, k4);
  next.t = state.t + dt;
  return next;
}

}  // namespace blowdiag
