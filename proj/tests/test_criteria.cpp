#include <gtest/gtest.h>

#include <cmath>

#include "blowdiag/initial_conditions.hpp"
#include "blowdiag/simulation.hpp"
#include "blowdiag/synth.hpp"

using namespace blowdiag;

namespace {

/// Series with rate = c/(T*−t) and Y ≡ Y0, built directly from the scaling law.
DiagnosticSeries self_similar_series(Model model, int k, double p, double T, double Y0, int samples) {
  SeriesMetadata m;
  m.model = model;
  m.k = k;
  m.p = p;
  m.base_norm = 1.0;
  const auto law = scaling_law(m);
  DiagnosticSeries s(m);
  for (int j = 0; j < samples; ++j) {
    const double tau = T * std::exp2(-j / 32.0);
    DiagnosticSample d;
    d.t = T - tau;
    d[law.rate] = law.threshold() / tau;
    d[law.norm] = std::pow(Y0 * std::pow(tau, -law.time_exponent), 1.0 / law.norm_exponent);
    s.append(d);
  }
  return s;
}

SyntheticProfile profile(SynthKind kind, Model model = Model::euler2d, double p = 2.0) {
  SyntheticProfile prof;
  prof.kind = kind;
  prof.model = model;
  prof.p = p;
  return prof;
}

}  // namespace

TEST(TailWindow, FractionWithMinimum) {
  const CriteriaOptions opt;
  EXPECT_EQ(tail_window(50, opt).begin, 34u);
  EXPECT_EQ(tail_window(1000, opt).begin, 800u);
  EXPECT_EQ(tail_window(10, opt).begin, 0u);
  EXPECT_EQ(tail_window(1000, opt).end, 1000u);
  EXPECT_THROW(tail_window(0, opt), std::invalid_argument);
}

TEST(DeficitTrace, SelfSimilarHasZeroDeficitAndConstantY) {
  const auto s = self_similar_series(Model::euler2d, 3, 2.0, 1.0, 2.5, 400);
  const auto d = deficit_trace(s, 1.0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_NEAR(d.scaled[i], 0.0, 1e-12);
    EXPECT_NEAR(d.Y[i], 2.5, 1e-12);
    EXPECT_NEAR(d.u[i], -std::log(d.tau[i]), 1e-15);
  }
  // On the geometric grid τ_{i+1} = rτ_i every trapezoid panel of c/τ overshoots
  // c·log(1/r) by the same amount, so the residual is known in closed form.
  const double r = std::exp2(-1.0 / 32.0), c = 1.5, a = 2.0 / 3.0;
  const double panel = 0.5 * c * (1.0 - r) * (1.0 + 1.0 / r) - c * std::log(1.0 / r);
  const double expect = std::abs(1.0 - std::exp(-a * panel * (d.size() - 1)));
  EXPECT_NEAR(representation_residual(s, 1.0), expect, 1e-10);
}

TEST(DeficitTrace, IntegralOfKnownRate) {
  // rate = 2 on [0, 0.9]: ∫D = 2t − c·log(T*/(T*−t)).
  SeriesMetadata m;
  m.model = Model::euler2d;
  m.base_norm = 1.0;
  DiagnosticSeries s(m);
  for (int i = 0; i <= 90; ++i) {
    DiagnosticSample d;
    d.t = i * 0.01;
    d[Column::alpha_k] = 2.0;
    d[Column::dk_v_l2] = std::exp(2.0 * d.t);
    s.append(d);
  }
  const auto d = deficit_trace(s, 1.0);
  const double c = 1.5;
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(d.integral[i], 2.0 * d.t[i] - c * std::log(1.0 / (1.0 - d.t[i])), 1e-12);
  // Q = e^{2t} makes the representation exact.
  EXPECT_LT(representation_residual(s, 1.0), 1e-12);
  EXPECT_EQ(eval_representation(s, 1.0).outcome, Outcome::satisfied);
}

TEST(Trichotomy, SelfSimilarIsCaseI) {
  const auto s = self_similar_series(Model::euler2d, 3, 2.0, 1.0, 1.0, 600);
  const auto v = classify_trichotomy(s, 1.0);
  EXPECT_EQ(v.outcome, Outcome::case_i);
  EXPECT_EQ(v.indices.size(), v.window.size());
  EXPECT_EQ(v.evidence.at("log_refined"), 1.0);
  EXPECT_EQ(eval_integral_condition(s, 1.0).outcome, Outcome::satisfied);
}

TEST(Trichotomy, IntegrableDeficitLimitMatchesClosedForm) {
  for (double A : {0.4, -0.4}) {
    auto prof = profile(SynthKind::integrable_deficit);
    prof.amplitude = A;
    prof.exponent = 0.7;
    prof.Y0 = 1.3;
    const auto s = synth(prof);
    const auto v = classify_trichotomy(s, prof.T_star);
    ASSERT_EQ(v.outcome, Outcome::case_ii) << A;
    // ∫₀^{T*} Aτ^{−β}dt = A T*^{1−β}/(1−β).
    const double a = scaling_law(s.meta()).norm_exponent;
    const double expect = prof.Y0 * std::exp(a * A * std::pow(prof.T_star, 0.3) / 0.3);
    EXPECT_NEAR(v.evidence.at("Y_limit"), expect, 1e-3 * expect) << A;
    EXPECT_NEAR(v.evidence.at("scaled_deficit_slope"), -0.3, 1e-9);
  }
}

TEST(Trichotomy, DivergentPositiveIsCaseIII) {
  auto prof = profile(SynthKind::divergent_deficit, Model::sqg, 4.0);
  prof.amplitude = 0.5;
  const auto v = classify_trichotomy(synth(prof), prof.T_star);
  EXPECT_EQ(v.outcome, Outcome::case_iii);
  EXPECT_GT(v.evidence.at("logY_slope"), 0.0);
}

TEST(Trichotomy, DecayingIsNonBlowup) {
  const auto s = synth(profile(SynthKind::decaying));
  const auto v = classify_trichotomy(s, 1.0);
  EXPECT_EQ(v.outcome, Outcome::violated);
  EXPECT_EQ(v.evidence.at("non_blowup"), 1.0);
  EXPECT_EQ(eval_lower_bound(s, 1.0).outcome, Outcome::violated);
  EXPECT_EQ(eval_integral_condition(s, 1.0).outcome, Outcome::violated);
}

TEST(Trichotomy, CriticalNavierStokesExcludesCaseII) {
  auto prof = profile(SynthKind::integrable_deficit, Model::ns2d, 2.0);
  prof.amplitude = 0.3;
  const auto v = classify_trichotomy(synth(prof), prof.T_star);
  EXPECT_EQ(v.outcome, Outcome::violated);
  EXPECT_EQ(v.evidence.at("non_blowup"), 1.0);
  EXPECT_EQ(v.evidence.at("critical_p_equals_N"), 1.0);
}

TEST(Trichotomy, IntendedCasesOnRandomFixtures) {
  std::mt19937_64 rng(123);
  for (auto kind : {SynthKind::self_similar, SynthKind::integrable_deficit, SynthKind::divergent_deficit, SynthKind::decaying})
    for (int i = 0; i < 10; ++i) {
      const auto prof = draw_profile(kind, Model::euler2d, 3, 2.0, 2, rng);
      EXPECT_EQ(classify_trichotomy(synth(prof), prof.T_star).outcome, intended_case(prof)) << to_string(kind) << " " << i;
    }
}

TEST(IntegralCondition, NegativeIntegrableIsSatisfied) {
  auto prof = profile(SynthKind::integrable_deficit);
  prof.amplitude = -0.5;
  EXPECT_EQ(eval_integral_condition(synth(prof), 1.0).outcome, Outcome::satisfied);
}

TEST(LowerBound, ThresholdComparison) {
  const auto s = self_similar_series(Model::euler2d, 3, 2.0, 1.0, 2.0, 400);
  CriteriaOptions opt;
  EXPECT_EQ(eval_lower_bound(s, 1.0, opt).outcome, Outcome::inconclusive);
  opt.K = 1.0;
  const auto v = eval_lower_bound(s, 1.0, opt);
  EXPECT_EQ(v.outcome, Outcome::satisfied);
  EXPECT_NEAR(v.evidence.at("tail_liminf"), 2.0, 1e-12);
  opt.K = 3.0;
  EXPECT_EQ(eval_lower_bound(s, 1.0, opt).outcome, Outcome::inconclusive);
}

TEST(LowerBound, SteadyTaylorGreenIsViolated) {
  const Grid g(2, 32);
  StepperConfig cfg;
  cfg.dt = 0.05;
  cfg.t_end = 1.0;
  const FlowState s0{Model::euler2d, taylor_green_vorticity(g), 0.0, 0.0};
  const auto res = run(s0, cfg, Recorder::for_initial_state(s0, 3, 2.0), {});
  // Constant norm: Y = (T*−t)·X decays with slope −1 in u.
  for (double T : {1.001, 1.01}) {
    CriteriaOptions opt;
    opt.min_window = 4;
    const auto v = eval_lower_bound(res.series, T, opt);
    EXPECT_EQ(v.outcome, Outcome::violated) << T;
    EXPECT_NEAR(v.evidence.at("logY_slope"), -1.0, 1e-9);
  }
}

TEST(LogCorrected, CrossingsSitAtDyadicTimes) {
  auto prof = profile(SynthKind::log_corrected);
  prof.eps0 = 2.0;
  prof.amplitude = 0.8;
  const auto s = synth(prof);
  const auto v = eval_log_corrected(s, 1.0, 2.0);
  ASSERT_FALSE(v.indices.empty());
  for (std::size_t i : v.indices) {
    const double octave = std::log2(1.0 / (1.0 - s[i].t));
    EXPECT_NEAR(octave, std::round(octave), 1e-9) << i;
  }
  // Every dyadic sample from τ = 1/2 to the end is a crossing.
  const auto expected = static_cast<std::size_t>(std::floor(std::log2(1.0 / prof.tau_min))) - 1 + 1;
  EXPECT_EQ(v.indices.size(), expected);
  EXPECT_EQ(v.outcome, Outcome::satisfied);
  // A larger ε₀ relaxes the bound so every sample passes; a smaller one fails all.
  EXPECT_EQ(eval_log_corrected(s, 1.0, 2.0 * (1.0 + 0.8) + 0.01).indices.size(), s.size());
  EXPECT_EQ(eval_log_corrected(s, 1.0, 1.5).outcome, Outcome::violated);
}

TEST(LogCorrected, RejectsSmallEps0AndMissingColumns) {
  const auto s = synth(profile(SynthKind::self_similar));
  EXPECT_THROW(eval_log_corrected(s, 2.0, 1.0), std::invalid_argument);
  EXPECT_THROW(eval_log_corrected(s, 2.0, 0.5), std::invalid_argument);
  EXPECT_THROW(eval_log_corrected(s, 2.0, 2.0, {}, true), UnsupportedCriterion);
}

TEST(LogCorrected, RescalesLongHorizons) {
  const auto s = self_similar_series(Model::euler2d, 3, 2.0, 10.0, 1.0, 200);
  const auto v = eval_log_corrected(s, 10.0, 2.0);
  EXPECT_LT(v.evidence.at("time_scale") * (10.0 - s.samples().back().t), 1.0 / std::numbers::e);
  EXPECT_EQ(v.outcome, Outcome::satisfied);
}

TEST(Osgood, ClassicalExamples) {
  const double L_max = 12.0 * std::log(10.0);
  auto sq = osgood_check([](double s) { return s * s; });
  EXPECT_EQ(sq.verdict, OsgoodVerdict::osgood);
  EXPECT_NEAR(sq.partial_integral, 1.0 - 1e-12, 1e-6);
  auto lin = osgood_check([](double s) { return s; });
  EXPECT_EQ(lin.verdict, OsgoodVerdict::not_osgood);
  EXPECT_NEAR(lin.partial_integral, L_max, 1e-9);
  EXPECT_NEAR(lin.tail_exponent, 0.0, 1e-12);
  auto log2g = osgood_check([](double s) { return s * std::pow(1.0 + std::log(s), 2.0); });
  EXPECT_EQ(log2g.verdict, OsgoodVerdict::osgood);
  EXPECT_NEAR(log2g.partial_integral, 1.0 - 1.0 / (1.0 + L_max), 1e-6);
  auto loglin = osgood_check([](double s) { return s * (1.0 + std::log(s)); });
  EXPECT_NEAR(loglin.partial_integral, std::log(1.0 + L_max), 1e-6);
  EXPECT_NE(loglin.verdict, OsgoodVerdict::osgood);
  EXPECT_EQ(osgood_check([](double s) { return s * std::pow(std::log(s + std::numbers::e), 2.0); }).verdict,
            OsgoodVerdict::osgood);
  const auto one = osgood_check([](double) { return 1.0; });
  EXPECT_EQ(one.verdict, OsgoodVerdict::not_osgood);
  EXPECT_NEAR(one.partial_integral, 1e12 - 1.0, 1e-6 * 1e12);
  EXPECT_THROW(osgood_check([](double) { return -1.0; }), std::invalid_argument);
  EXPECT_THROW(osgood_check(std::vector<double>{1.0, 2.0, 3.0, 4.0}), std::invalid_argument);
}

TEST(Osgood, WeightedIntegralEqualsChangeOfVariables) {
  auto prof = profile(SynthKind::divergent_deficit);
  prof.amplitude = 0.6;
  prof.Y0 = 4.0;
  const auto s = synth(prof);
  const auto r = osgood_weighted_integral(s, 1.0, [](double x) { return x * x; });
  EXPECT_EQ(r.start, 0u);
  EXPECT_NEAR(r.value, 1.0 / r.s_start - 1.0 / r.s_end, 1e-4);
  const auto v = eval_osgood(s, 1.0, [](double x) { return x * x; });
  EXPECT_EQ(v.outcome, Outcome::satisfied);
  EXPECT_EQ(eval_osgood(synth(profile(SynthKind::decaying)), 1.0, [](double x) { return x * x; }).outcome,
            Outcome::inconclusive);
}

TEST(Batch, OrderingAndValidation) {
  const auto s = synth(profile(SynthKind::self_similar));
  const auto out = evaluate_criteria(s, {"trichotomy", "representation"}, {1.0, 2.0}, 2.0);
  ASSERT_EQ(out.size(), 4u);
  EXPECT_EQ(out[0].criterion, "trichotomy");
  EXPECT_EQ(out[1].T_star, 2.0);
  EXPECT_EQ(out[2].criterion, "representation");
  EXPECT_EQ(out[0].model, "euler2d");
  EXPECT_THROW(evaluate_criteria(s, {"nope"}, {1.0}, 2.0), std::invalid_argument);
  EXPECT_THROW(evaluate_criteria(s, {"trichotomy"}, {0.5}, 2.0), std::invalid_argument);
  EXPECT_THROW(evaluate_criteria(s, {"log_corrected_sup"}, {2.0}, 2.0), UnsupportedCriterion);
  EXPECT_EQ(to_string(Outcome::case_iii), "case_iii");
}

TEST(Synth, ValidatesProfiles) {
  auto prof = profile(SynthKind::integrable_deficit);
  prof.exponent = 1.0;
  EXPECT_THROW(synth(prof), std::invalid_argument);
  prof = profile(SynthKind::log_corrected);
  prof.eps0 = 1.0;
  EXPECT_THROW(synth(prof), std::invalid_argument);
  prof = profile(SynthKind::self_similar, Model::ns2d, 1.0);
  EXPECT_THROW(synth(prof), std::invalid_argument);
  EXPECT_THROW(parse_synth_kind("bogus"), std::invalid_argument);
  EXPECT_EQ(parse_synth_kind("log_corrected"), SynthKind::log_corrected);
  prof = profile(SynthKind::self_similar);
  prof.T_star = 0.75;
  const auto s = synth(prof);
  EXPECT_EQ(std::stod(s.meta().extra.at("T_star")), 0.75);
  EXPECT_LT(representation_residual(s, 0.75), 1e-13);
}
