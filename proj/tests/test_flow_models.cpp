#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "blowdiag/diagnostics.hpp"
#include "blowdiag/initial_conditions.hpp"
#include "blowdiag/simulation.hpp"

using namespace blowdiag;

namespace {

double max_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  return m;
}

FlowState make_state(Model model, Field q, double nu = 0.0) {
  return FlowState{model, std::move(q), nu, 0.0};
}

FlowState advance(FlowState s, double dt, int steps) {
  for (int i = 0; i < steps; ++i) s = step_rk4(s, dt);
  return s;
}

}  // namespace

TEST(Models, ParseAndNames) {
  for (auto m : {Model::euler2d, Model::ns2d, Model::sqg}) EXPECT_EQ(parse_model(to_string(m)), m);
  EXPECT_THROW(parse_model("euler3d"), std::invalid_argument);
}

TEST(SqgVelocity, SingleModeOracle) {
  const Grid g(2, 32);
  const Field v = sqg_velocity(sqg_single_mode(g, 1));
  double err = 0.0;
  for_each_point(g, [&](std::size_t i, const std::array<double, 3>& x) {
    err = std::max({err, std::abs(v(0, i)), std::abs(v(1, i) - std::cos(x[0]))});
  });
  EXPECT_LT(err, 1e-12);
  EXPECT_LT(divergence(sqg_velocity(random_smooth_scalar(g, 2))).max_abs(), 1e-12);
}

TEST(SteadyStates, SqgSineAndTaylorGreenHaveZeroRhs) {
  const Grid g(2, 64);
  EXPECT_LT(rhs(make_state(Model::sqg, sqg_single_mode(g, 1))).max_abs(), 1e-13);
  EXPECT_LT(rhs(make_state(Model::sqg, sqg_single_mode(g, 3, 2.0))).max_abs(), 1e-12);
  EXPECT_LT(rhs(make_state(Model::euler2d, taylor_green_vorticity(g))).max_abs(), 1e-13);
  const FlowState later = advance(make_state(Model::euler2d, taylor_green_vorticity(g)), 0.05, 20);
  EXPECT_LT(max_diff(later.prognostic, taylor_green_vorticity(g)), 1e-12);
}

TEST(NonlinearTerm, TaylorGreenIsPressureGradient) {
  const Grid g(2, 64);
  const Field nl = nonlinear_term(taylor_green_velocity(g));
  // (v·∇)v = ∇((cos 2x₁ + cos 2x₂)/4) for the Taylor–Green cell.
  double err = 0.0;
  for_each_point(g, [&](std::size_t i, const std::array<double, 3>& x) {
    err = std::max({err, std::abs(nl(0, i) + 0.5 * std::sin(2.0 * x[0])), std::abs(nl(1, i) + 0.5 * std::sin(2.0 * x[1]))});
  });
  EXPECT_LT(err, 1e-12);
}

TEST(NonlinearTerm, MatchesDirectConvolutionIn3D) {
  const int n = 16;
  const Grid g(3, n);
  const Field v = random_divergence_free(g, 41, 4.0, 2);
  const Spectrum vh = transform(v);
  struct Mode {
    Index3 xi;
    std::array<complex, 3> c;
  };
  std::vector<Mode> modes;
  for_each_mode(g, [&](std::size_t idx, const Index3& xi) {
    std::array<complex, 3> c{vh(0, idx), vh(1, idx), vh(2, idx)};
    if (std::abs(c[0]) + std::abs(c[1]) + std::abs(c[2]) > 1e-14) modes.push_back({xi, c});
  });
  ASSERT_FALSE(modes.empty());
  // Σ_{η+ζ=ξ} v̂_j(η) iζ_j v̂(ζ), kept on the 2/3-rule band.
  std::map<std::array<int, 3>, std::array<complex, 3>> direct;
  for (const auto& a : modes)
    for (const auto& b : modes) {
      const std::array<int, 3> xi{a.xi[0] + b.xi[0], a.xi[1] + b.xi[1], a.xi[2] + b.xi[2]};
      complex dot = 0.0;
      for (int j = 0; j < 3; ++j) dot += a.c[j] * complex(0.0, b.xi[j]);
      auto& slot = direct[xi];
      for (int c = 0; c < 3; ++c) slot[c] += dot * b.c[c];
    }
  const Spectrum nl = transform(nonlinear_term(v));
  double err = 0.0, scale = 0.0;
  for_each_mode(g, [&](std::size_t idx, const Index3& xi) {
    std::array<complex, 3> expect{};
    const bool kept = std::abs(xi[0]) <= n / 3 && std::abs(xi[1]) <= n / 3 && std::abs(xi[2]) <= n / 3;
    if (auto it = direct.find({xi[0], xi[1], xi[2]}); kept && it != direct.end()) expect = it->second;
    for (int c = 0; c < 3; ++c) {
      err = std::max(err, std::abs(nl(c, idx) - expect[c]));
      scale = std::max(scale, std::abs(expect[c]));
    }
  });
  EXPECT_GT(scale, 1e-3);
  EXPECT_LT(err, 1e-12 * std::max(1.0, scale));
}

TEST(Rhs, L2OrthogonalToPrognostic) {
  const Grid g(2, 64);
  for (auto model : {Model::euler2d, Model::sqg}) {
    const Field q = random_smooth_scalar(g, 7);
    const Field r = rhs(make_state(model, q));
    EXPECT_GT(r.max_abs(), 1e-3);
    EXPECT_NEAR(inner(q, r), 0.0, 1e-11 * lp_norm(q, 2.0) * lp_norm(r, 2.0)) << to_string(model);
  }
}

TEST(Rhs, ViscousTermOfTaylorGreen) {
  const Grid g(2, 32);
  const double nu = 0.03;
  const Field w = taylor_green_vorticity(g);
  Field expect = w;
  expect *= -2.0 * nu;
  EXPECT_LT(max_diff(rhs(make_state(Model::ns2d, w, nu)), expect), 1e-13);
}

TEST(Rk4, FourthOrderConvergence) {
  const Grid g(2, 32);
  const FlowState s0 = make_state(Model::euler2d, random_smooth_scalar(g, 11, 4.0, 6, 2.0));
  const double T = 0.4;
  const Field ref = advance(s0, T / 256, 256).prognostic;
  const double e1 = max_diff(advance(s0, T / 8, 8).prognostic, ref);
  const double e2 = max_diff(advance(s0, T / 16, 16).prognostic, ref);
  ASSERT_GT(e2, 0.0);
  EXPECT_GE(e1 / e2, 12.0);
  EXPECT_LE(e1 / e2, 20.0);
}

TEST(NavierStokes, TaylorGreenDecaysExponentially) {
  const Grid g(2, 32);
  const double nu = 0.05, T = 0.5;
  StepperConfig cfg;
  cfg.dt = 0.01;
  cfg.t_end = T;
  const FlowState s0 = make_state(Model::ns2d, taylor_green_vorticity(g), nu);
  const auto res = run(s0, cfg, Recorder::for_initial_state(s0, 3, 2.0), {});
  Field expect = taylor_green_vorticity(g);
  expect *= std::exp(-2.0 * nu * T);
  EXPECT_DOUBLE_EQ(res.final_state.t, T);
  EXPECT_LT(max_diff(res.final_state.prognostic, expect), 1e-9);
}

TEST(Run, RecordsInitialEveryAndFinal) {
  const Grid g(2, 32);
  StepperConfig cfg;
  cfg.dt = 0.03;
  cfg.t_end = 0.25;
  cfg.record_every = 3;
  const FlowState s0 = make_state(Model::euler2d, random_smooth_scalar(g, 3));
  const auto res = run(s0, cfg, Recorder::for_initial_state(s0, 3, 2.0), {});
  // 8 full steps plus a clamped last one: records at steps 0, 3, 6, 9.
  EXPECT_EQ(res.steps, 9u);
  ASSERT_EQ(res.series.size(), 4u);
  EXPECT_EQ(res.series.samples().front().t, 0.0);
  EXPECT_EQ(res.series.samples().back().t, 0.25);
  EXPECT_FALSE(res.blowup_suspected);
}

TEST(Run, ReportsNonFiniteState) {
  const Grid g(2, 16);
  StepperConfig cfg;
  cfg.dt = 1.0;
  cfg.t_end = 200.0;
  const FlowState s0 = make_state(Model::euler2d, random_smooth_scalar(g, 5, 4.0, -1, 1e120));
  const auto res = run(s0, cfg, Recorder::for_initial_state(s0, 3, 2.0), {});
  EXPECT_TRUE(res.blowup_suspected);
  EXPECT_NE(res.message.find("non-finite"), std::string::npos);
  EXPECT_GE(res.series.size(), 1u);
  EXPECT_TRUE(res.final_state.prognostic.all_finite());
}

TEST(Validation, RejectsBadStatesAndSteppers) {
  const Grid g2(2, 16), g3(3, 16);
  EXPECT_THROW(make_state(Model::euler2d, taylor_green_vorticity(g2), 0.1).validate(), std::invalid_argument);
  EXPECT_THROW(make_state(Model::ns2d, taylor_green_vorticity(g2), -0.1).validate(), std::invalid_argument);
  EXPECT_THROW(make_state(Model::euler2d, Field(g3, 1)).validate(), std::invalid_argument);
  EXPECT_THROW(make_state(Model::euler2d, Field(g2, 2)).validate(), std::invalid_argument);
  Field biased = taylor_green_vorticity(g2);
  for (auto& x : biased.values()) x += 0.5;
  EXPECT_THROW(make_state(Model::euler2d, biased).validate(), std::invalid_argument);
  EXPECT_NO_THROW(make_state(Model::sqg, biased).validate());
  StepperConfig cfg;
  cfg.dt = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.dt.reset();
  cfg.record_every = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.record_every = 1;
  cfg.t_end = 0.0;
  const FlowState s = make_state(Model::euler2d, taylor_green_vorticity(g2));
  EXPECT_THROW(run(s, cfg, Recorder::for_initial_state(s, 3, 2.0), {}), std::invalid_argument);
}

TEST(StableDt, CflAndDiffusionBounds) {
  const Grid g(2, 32);
  StepperConfig cfg;
  cfg.cfl_safety = 0.5;
  const FlowState s = make_state(Model::euler2d, taylor_green_vorticity(g));
  const double speed = max_speed(velocity_of(s));
  EXPECT_NEAR(stable_dt(s, cfg), 0.5 * g.spacing() / speed, 1e-15);
  const FlowState v = make_state(Model::ns2d, taylor_green_vorticity(g), 10.0);
  EXPECT_LT(stable_dt(v, cfg), stable_dt(s, cfg));
  cfg.dt = 0.123;
  EXPECT_EQ(stable_dt(s, cfg), 0.123);
}

TEST(NavierStokes, EnergyDissipationRate) {
  const Grid g(2, 64);
  const double nu = 0.02, h = 1e-4;
  const FlowState s = make_state(Model::ns2d, random_smooth_scalar(g, 19), nu);
  const auto energy = [](const FlowState& q) { return std::pow(lp_norm(velocity_of(q), 2.0), 2.0); };
  const double fd = (energy(step_rk4(s, h)) - energy(step_rk4(s, -h))) / (2.0 * h);
  const double exact = -2.0 * nu * std::pow(lp_norm(gradient(velocity_of(s)), 2.0), 2.0);
  EXPECT_NEAR(fd, exact, 1e-5 * std::abs(exact));
}
