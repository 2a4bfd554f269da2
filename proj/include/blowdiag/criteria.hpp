#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "blowdiag/diagnostics.hpp"

namespace blowdiag {

enum class Outcome { satisfied, violated, inconclusive, case_i, case_ii, case_iii };

inline std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::satisfied: return "satisfied";
    case Outcome::violated: return "violated";
    case Outcome::inconclusive: return "inconclusive";
    case Outcome::case_i: return "case_i";
    case Outcome::case_ii: return "case_ii";
    case Outcome::case_iii: return "case_iii";
  }
  return "unknown";
}

/// Raised when a criterion needs a column the series does not carry.
class UnsupportedCriterion : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Window {
  std::size_t begin = 0;
  std::size_t end = 0;  ///< exclusive
  std::size_t size() const { return end - begin; }
};

struct CriterionVerdict {
  std::string criterion;
  std::string model;
  double T_star = 0.0;
  Outcome outcome = Outcome::inconclusive;
  std::map<std::string, double> evidence;
  std::vector<std::size_t> indices;  ///< detected sample indices (crossings, equality events)
  Window window;
  std::vector<std::string> notes;
};

struct CriteriaOptions {
  double tol = 1e-3;               ///< equality tolerance on the scaled deficit (T*−t)·D
  double window_fraction = 0.2;    ///< trailing window used for liminf/limsup estimates
  std::size_t min_window = 16;
  double converge_slope = -0.1;    ///< d log|s|/du at or below this: tail integral converges
  double diverge_slope = -0.03;    ///< d log|s|/du at or above this: tail integral diverges
  double trend_tol = 0.05;         ///< |d log Y/du| below this counts as flat
  std::optional<double> K;         ///< lower-bound threshold; defaults to the fitted constant
};

inline Window tail_window(std::size_t n, const CriteriaOptions& opt) {
  if (n == 0) throw std::invalid_argument("tail_window: empty series");
  auto w = static_cast<std::size_t>(std::ceil(opt.window_fraction * static_cast<double>(n)));
  w = std::min(n, std::max(w, opt.min_window));
  return {n - w, n};
}

namespace detail {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  if (x.size() < 2) return {};
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) return {0.0, my, 0.0};
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Deficit trace
// ---------------------------------------------------------------------------

/// Everything the evaluators derive from a series and a candidate T*.
///
/// u = −log(T*−t) is the logarithmic time to T*; with s = (T*−t)·D the scaled
/// deficit, d log Y/du = a·s.
struct DeficitTrace {
  ScalingLaw law;
  double T_star = 0.0;
  std::vector<double> t, tau, u, rate, deficit, scaled, Y, logY;
  std::vector<double> integral;  ///< ∫_{t₀}^{t} D dτ, rate part by trapezoid, c/(T*−τ) part exact

  std::size_t size() const { return t.size(); }
};

inline void require_column(const DiagnosticSeries& series, Column c, const std::string& criterion) {
  if (!series.has_column(c)) {
    throw UnsupportedCriterion("criterion '" + criterion + "' is unsupported for model " +
                               to_string(series.meta().model) + ": series has no " + column_name(c) + " column");
  }
}

inline DeficitTrace deficit_trace(const DiagnosticSeries& series, double T_star, const std::string& criterion = "deficit") {
  if (series.empty()) throw std::invalid_argument(criterion + ": empty series");
  if (!(T_star > series.samples().back().t))
    throw std::invalid_argument(criterion + ": T_star must exceed the last recorded time");
  DeficitTrace d;
  d.law = scaling_law(series.meta());
  d.T_star = T_star;
  require_column(series, d.law.rate, criterion);
  require_column(series, d.law.norm, criterion);
  const double c = d.law.threshold();
  const double base = series.meta().base_norm.value_or(1.0);
  const std::size_t n = series.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = series[i];
    const double tau = T_star - s.t;
    const double rate = s.value(d.law.rate);
    const double D = rate - c / tau;
    d.t.push_back(s.t);
    d.tau.push_back(tau);
    d.u.push_back(-std::log(tau));
    d.rate.push_back(rate);
    d.deficit.push_back(D);
    d.scaled.push_back(tau * D);
    const auto sv = scale_x(d.law, s.t, s.value(d.law.norm), base, T_star);
    d.Y.push_back(sv.Y);
    d.logY.push_back(std::log(sv.Y));
  }
  const auto rate_integral = cumulative_trapezoid(d.t, d.rate);
  d.integral.resize(n);
  for (std::size_t i = 0; i < n; ++i) d.integral[i] = rate_integral[i] - c * std::log(d.tau[0] / d.tau[i]);
  return d;
}

namespace detail {

inline CriterionVerdict make_verdict(const std::string& id, const DiagnosticSeries& series, double T_star) {
  CriterionVerdict v;
  v.criterion = id;
  v.model = to_string(series.meta().model);
  v.T_star = T_star;
  return v;
}

// Slope of log|s| against u over the window, skipping exact zeros.
inline std::optional<LineFit> scaled_deficit_decay(const DeficitTrace& d, const Window& w) {
  std::vector<double> x, y;
  for (std::size_t i = w.begin; i < w.end; ++i) {
    if (d.scaled[i] == 0.0) continue;
    x.push_back(d.u[i]);
    y.push_back(std::log(std::abs(d.scaled[i])));
  }
  if (x.size() < 2) return std::nullopt;
  return fit_line(x, y);
}

inline LineFit logY_trend(const DeficitTrace& d, const Window& w) {
  std::vector<double> x(d.u.begin() + w.begin, d.u.begin() + w.end);
  std::vector<double> y(d.logY.begin() + w.begin, d.logY.begin() + w.end);
  return fit_line(x, y);
}

inline std::size_t sign_changes(const DeficitTrace& d, const Window& w) {
  std::size_t count = 0;
  for (std::size_t i = w.begin + 1; i < w.end; ++i)
    if ((d.scaled[i] > 0.0 && d.scaled[i - 1] < 0.0) || (d.scaled[i] < 0.0 && d.scaled[i - 1] > 0.0)) ++count;
  return count;
}

inline void add_window(CriterionVerdict& v, const DeficitTrace& d, const Window& w) {
  v.window = w;
  v.evidence["window_t_begin"] = d.t[w.begin];
  v.evidence["window_t_end"] = d.t[w.end - 1];
  v.evidence["threshold_c"] = d.law.threshold();
  v.evidence["norm_exponent_a"] = d.law.norm_exponent;
  v.evidence["time_exponent_e"] = d.law.time_exponent;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Evaluators
// ---------------------------------------------------------------------------

/// liminf of the scale-invariant window Y against the threshold K.
///
/// The liminf is estimated as the minimum of Y over the trailing window. A tail
/// along which log Y decreases linearly in u = −log(T*−t) extrapolates to
/// liminf 0 and is reported violated; without K the trend alone decides.
inline CriterionVerdict eval_lower_bound(const DiagnosticSeries& series, double T_star, const CriteriaOptions& opt = {}) {
  const auto d = deficit_trace(series, T_star, "lower_bound");
  auto v = detail::make_verdict("lower_bound", series, T_star);
  const Window w = tail_window(d.size(), opt);
  detail::add_window(v, d, w);
  const double liminf = *std::min_element(d.Y.begin() + w.begin, d.Y.begin() + w.end);
  const auto trend = detail::logY_trend(d, w);
  const std::optional<double> K = opt.K ? opt.K : series.meta().constants.K;
  v.evidence["tail_liminf"] = liminf;
  v.evidence["Y_end"] = d.Y.back();
  v.evidence["logY_slope"] = trend.slope;
  if (K) v.evidence["K"] = *K;

  const bool decaying = trend.slope <= -opt.trend_tol;
  if (decaying) {
    v.outcome = Outcome::violated;
    v.evidence["extrapolated_liminf"] = 0.0;
    v.notes.push_back("Y decreases along the tail and extrapolates to 0");
  } else if (!K) {
    v.outcome = Outcome::inconclusive;
    v.notes.push_back("no threshold K available and the tail of Y is not decaying");
  } else {
    v.outcome = liminf >= *K ? Outcome::satisfied : Outcome::inconclusive;
  }
  return v;
}

/// Bounded-below test of t ↦ ∫₀ᵗ D dτ as t → T*.
inline CriterionVerdict eval_integral_condition(const DiagnosticSeries& series, double T_star,
                                                const CriteriaOptions& opt = {}) {
  const auto d = deficit_trace(series, T_star, "integral_condition");
  auto v = detail::make_verdict("integral_condition", series, T_star);
  const Window w = tail_window(d.size(), opt);
  detail::add_window(v, d, w);
  double mean_s = 0.0;
  for (std::size_t i = w.begin; i < w.end; ++i) mean_s += d.scaled[i];
  mean_s /= static_cast<double>(w.size());
  const auto decay = detail::scaled_deficit_decay(d, w);
  const std::size_t changes = detail::sign_changes(d, w);
  v.evidence["integral_end"] = d.integral.back();
  v.evidence["integral_min"] = *std::min_element(d.integral.begin(), d.integral.end());
  v.evidence["mean_scaled_deficit"] = mean_s;
  v.evidence["sign_changes"] = static_cast<double>(changes);
  if (decay) v.evidence["scaled_deficit_slope"] = decay->slope;

  if (mean_s >= -opt.tol) {
    v.outcome = Outcome::satisfied;
  } else if (decay && decay->slope <= opt.converge_slope && changes == 0) {
    v.outcome = Outcome::satisfied;
    v.notes.push_back("negative deficit with an integrable tail");
  } else if (changes > 0) {
    v.outcome = Outcome::inconclusive;
    v.notes.push_back("deficit oscillates in sign along the tail");
  } else {
    v.outcome = Outcome::violated;
    v.notes.push_back("integral of the deficit decreases without bound along the tail");
  }
  return v;
}

/// Sequence condition rate(t_n) ≥ c/τ − c·ε₀/(τ log(1/τ)), τ = T*−t_n.
///
/// Times are rescaled so that T*−t_end < 1/e before the logarithm is taken;
/// only samples with rescaled τ < 1 are tested. With sup_variant the rate is
/// the pointwise-sup column (‖α‖_∞ or ‖α̂‖_∞) and coefficient is the prefactor
/// replacing c.
inline CriterionVerdict eval_log_corrected(const DiagnosticSeries& series, double T_star, double eps0,
                                           const CriteriaOptions& opt = {}, bool sup_variant = false,
                                           std::optional<double> coefficient = std::nullopt) {
  const std::string id = sup_variant ? (coefficient ? "log_corrected_sup_scaled" : "log_corrected_sup") : "log_corrected";
  if (!(eps0 > 1.0)) throw std::invalid_argument(id + ": eps0 must be > 1");
  const auto d = deficit_trace(series, T_star, id);
  if (sup_variant) require_column(series, Column::alpha_linf, id);
  auto v = detail::make_verdict(id, series, T_star);
  const Window w = tail_window(d.size(), opt);
  detail::add_window(v, d, w);

  double scale = 1.0;
  const double tau_end = d.tau.back();
  if (tau_end >= 1.0 / std::numbers::e) scale = 1.0 / (2.0 * std::numbers::e * tau_end);
  const double c = sup_variant ? coefficient.value_or(1.0) : d.law.threshold();

  std::size_t tail_hits = 0, tested = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double tau = scale * d.tau[i];
    if (!(tau < 1.0)) continue;
    ++tested;
    const double rate = (sup_variant ? series[i].value(Column::alpha_linf) : d.rate[i]) / scale;
    const double L = std::log(1.0 / tau);
    // scaled margin τ·(rate − bound)
    const double margin = tau * rate - c + c * eps0 / L;
    min_margin = std::min(min_margin, margin);
    if (margin >= -1e-9 * std::max(1.0, std::abs(c))) {
      v.indices.push_back(i);
      if (i >= w.begin) ++tail_hits;
    }
  }
  v.evidence["eps0"] = eps0;
  v.evidence["time_scale"] = scale;
  v.evidence["coefficient"] = c;
  v.evidence["samples_tested"] = static_cast<double>(tested);
  v.evidence["crossings"] = static_cast<double>(v.indices.size());
  v.evidence["tail_crossings"] = static_cast<double>(tail_hits);
  if (tested > 0) v.evidence["min_scaled_margin"] = min_margin;
  if (!v.indices.empty()) v.evidence["last_crossing_t"] = d.t[v.indices.back()];
  if (sup_variant && !coefficient)
    v.notes.push_back("sup variant uses coefficient 1; the averaged criterion uses the scaling threshold instead");

  if (tail_hits >= 2) {
    v.outcome = Outcome::satisfied;
  } else if (tail_hits == 0) {
    v.outcome = Outcome::violated;
  } else {
    v.outcome = Outcome::inconclusive;
  }
  return v;
}

/// Three-way classification of the deficit near T*.
///
/// case_i: the scaled deficit vanishes or changes sign repeatedly in the tail.
/// case_ii: the deficit keeps its sign and is integrable, so Y has a finite limit.
/// case_iii: positive, non-integrable deficit with Y growing.
/// A negative non-integrable deficit drives Y to 0; this is reported as violated
/// with the non_blowup flag set. For the critical Navier–Stokes exponent p = N
/// case_ii is excluded and the converging branch is reported as violated.
inline CriterionVerdict classify_trichotomy(const DiagnosticSeries& series, double T_star, const CriteriaOptions& opt = {}) {
  const auto d = deficit_trace(series, T_star, "trichotomy");
  auto v = detail::make_verdict("trichotomy", series, T_star);
  const Window w = tail_window(d.size(), opt);
  detail::add_window(v, d, w);
  const auto& meta = series.meta();
  const bool critical = meta.model == Model::ns2d && meta.p == meta.dim;
  const double a = d.law.norm_exponent;

  bool all_pos = true, all_neg = true;
  for (std::size_t i = w.begin; i < w.end; ++i) {
    if (std::abs(d.scaled[i]) <= opt.tol) v.indices.push_back(i);
    all_pos = all_pos && d.scaled[i] > 0.0;
    all_neg = all_neg && d.scaled[i] < 0.0;
  }
  const std::size_t changes = detail::sign_changes(d, w);
  const auto decay = detail::scaled_deficit_decay(d, w);
  const auto trend = detail::logY_trend(d, w);
  const std::size_t events = v.indices.size() + changes;
  const bool signed_tail = all_pos || all_neg;
  const bool clean_decay = signed_tail && decay && decay->slope <= opt.converge_slope && decay->r2 >= 0.99;

  double abs_integral = 0.0;
  for (std::size_t i = 1; i < d.size(); ++i)
    abs_integral += 0.5 * (d.t[i] - d.t[i - 1]) * (std::abs(d.deficit[i]) + std::abs(d.deficit[i - 1]));
  v.evidence["equality_events"] = static_cast<double>(v.indices.size());
  v.evidence["sign_changes"] = static_cast<double>(changes);
  v.evidence["abs_deficit_integral"] = abs_integral;
  v.evidence["integral_end"] = d.integral.back();
  v.evidence["Y_end"] = d.Y.back();
  v.evidence["logY_slope"] = trend.slope;
  v.evidence["critical_p_equals_N"] = critical ? 1.0 : 0.0;
  if (decay) {
    v.evidence["scaled_deficit_slope"] = decay->slope;
    v.evidence["scaled_deficit_fit_r2"] = decay->r2;
  }

  // Refined equality form: D = o(1/((T*−t) log(1/(T*−t)))) along the detected events.
  auto log_refined = [&]() {
    double worst = 0.0;
    for (std::size_t i : v.indices) {
      const double L = std::log(1.0 / d.tau[i]);
      if (L > 0.0) worst = std::max(worst, std::abs(d.scaled[i]) * L);
    }
    return worst;
  };

  if (events >= 2 && !clean_decay) {
    v.outcome = Outcome::case_i;
    const double worst = log_refined();
    v.evidence["log_refined_margin"] = worst;
    v.evidence["log_refined"] = worst <= opt.tol ? 1.0 : 0.0;
    return v;
  }
  if (signed_tail && decay && decay->slope <= opt.converge_slope) {
    const double s_end = d.scaled.back();
    const double tail = s_end / -decay->slope;
    if (critical) {
      v.outcome = Outcome::violated;
      v.evidence["non_blowup"] = 1.0;
      v.notes.push_back("case (ii) is excluded for p = N: a convergent deficit integral bounds the L^N norm");
      return v;
    }
    v.outcome = Outcome::case_ii;
    v.evidence["integral_limit"] = d.integral.back() + tail;
    v.evidence["Y_limit"] = std::exp(d.logY.back() + a * tail);
    return v;
  }
  if (signed_tail && (!decay || decay->slope >= opt.diverge_slope)) {
    if (all_pos && trend.slope > 0.0) {
      v.outcome = Outcome::case_iii;
      return v;
    }
    if (all_neg) {
      v.outcome = Outcome::violated;
      v.evidence["non_blowup"] = 1.0;
      v.notes.push_back("negative non-integrable deficit: Y tends to 0, so T* is not a blow-up time");
      return v;
    }
  }
  v.outcome = Outcome::inconclusive;
  v.notes.push_back("tail behaviour of the deficit is not settled on the recorded data");
  return v;
}

/// Max relative residual of Y(t) = Y(t₀)·exp(a ∫_{t₀}^t D dτ) over the series.
inline double representation_residual(const DiagnosticSeries& series, double T_star) {
  const auto d = deficit_trace(series, T_star, "representation");
  const double a = d.law.norm_exponent;
  double worst = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double rhs = d.Y[0] * std::exp(a * d.integral[i]);
    worst = std::max(worst, std::abs(d.Y[i] - rhs) / std::abs(rhs));
  }
  return worst;
}

inline CriterionVerdict eval_representation(const DiagnosticSeries& series, double T_star, double tolerance = 1e-3) {
  auto v = detail::make_verdict("representation", series, T_star);
  const double r = representation_residual(series, T_star);
  v.evidence["residual"] = r;
  v.evidence["tolerance"] = tolerance;
  v.outcome = r <= tolerance ? Outcome::satisfied : Outcome::violated;
  v.window = {0, series.size()};
  return v;
}

// ---------------------------------------------------------------------------
// Osgood condition
// ---------------------------------------------------------------------------

enum class OsgoodVerdict { osgood, not_osgood, inconclusive };

inline std::string to_string(OsgoodVerdict v) {
  switch (v) {
    case OsgoodVerdict::osgood: return "osgood";
    case OsgoodVerdict::not_osgood: return "not_osgood";
    case OsgoodVerdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

struct OsgoodOptions {
  double s_max = 1e12;
  int per_decade = 64;
  double margin = 0.25;  ///< decay exponent must clear −1 by this much
};

struct OsgoodResult {
  OsgoodVerdict verdict = OsgoodVerdict::inconclusive;
  double partial_integral = 0.0;  ///< ∫₁^{s_max} ds/g(s)
  double tail_exponent = 0.0;     ///< q in s/g(s) ~ (log s)^q on the upper half of the range
};

/// Osgood test from samples of g on the geometric grid s_j = 10^{j/per_decade}, j = 0..J.
///
/// With L = log s, ∫ ds/g = ∫ h dL for h = s/g(s). The tail exponent q is the
/// slope of log h against log L over L ∈ [L_max/2, L_max]; h ~ L^q is integrable
/// iff q < −1.
inline OsgoodResult osgood_check(const std::vector<double>& g, const OsgoodOptions& opt = {}) {
  if (g.size() < 5 || g.size() % 2 == 0) throw std::invalid_argument("osgood_check: need an odd sample count >= 5");
  const double dL = std::log(10.0) / opt.per_decade;
  std::vector<double> h(g.size()), L(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (!(g[j] > 0.0) || !std::isfinite(g[j])) throw std::invalid_argument("osgood_check: g must be positive and finite");
    L[j] = dL * static_cast<double>(j);
    h[j] = std::exp(L[j]) / g[j];
  }
  OsgoodResult r;
  double acc = h.front() + h.back();
  for (std::size_t j = 1; j + 1 < h.size(); ++j) acc += (j % 2 == 1 ? 4.0 : 2.0) * h[j];
  r.partial_integral = acc * dL / 3.0;

  std::vector<double> x, y;
  const double L_max = L.back();
  for (std::size_t j = 1; j < h.size(); ++j) {
    if (L[j] < 0.5 * L_max) continue;
    x.push_back(std::log(L[j]));
    y.push_back(std::log(h[j]));
  }
  r.tail_exponent = detail::fit_line(x, y).slope;
  if (r.tail_exponent < -1.0 - opt.margin) {
    r.verdict = OsgoodVerdict::osgood;
  } else if (r.tail_exponent > -1.0 + opt.margin) {
    r.verdict = OsgoodVerdict::not_osgood;
  } else {
    r.verdict = OsgoodVerdict::inconclusive;
  }
  return r;
}

inline OsgoodResult osgood_check(const std::function<double(double)>& g, const OsgoodOptions& opt = {}) {
  if (!(opt.s_max > 10.0) || opt.per_decade < 2) throw std::invalid_argument("osgood_check: invalid sampling options");
  auto J = static_cast<std::size_t>(std::llround(std::log10(opt.s_max) * opt.per_decade));
  if (J % 2 == 1) ++J;
  std::vector<double> samples(J + 1);
  for (std::size_t j = 0; j <= J; ++j) samples[j] = g(std::pow(10.0, static_cast<double>(j) / opt.per_decade));
  return osgood_check(samples, opt);
}

struct OsgoodIntegral {
  double value = 0.0;
  std::size_t start = 0;  ///< index of t₁
  double s_start = 0.0;   ///< log Y(t₁)
  double s_end = 0.0;     ///< log Y at the last sample
};

/// ∫_{t₁}^{t_end} a·D(t)/g(log Y(t)) dt by trapezoid, a the norm exponent.
///
/// Since d log Y/dt = a·D this equals ∫ ds/g(s) over [log Y(t₁), log Y(t_end)].
/// By default t₁ is the first sample with log Y > 1. Throws if the deficit is
/// negative beyond the tolerance anywhere on [t₁, t_end].
inline OsgoodIntegral osgood_weighted_integral(const DiagnosticSeries& series, double T_star,
                                               const std::function<double(double)>& g,
                                               std::optional<std::size_t> start = std::nullopt,
                                               const CriteriaOptions& opt = {}) {
  const auto d = deficit_trace(series, T_star, "osgood_weighted_integral");
  const double a = d.law.norm_exponent;
  std::size_t i0 = 0;
  if (start) {
    i0 = *start;
  } else {
    while (i0 < d.size() && !(d.logY[i0] > 1.0)) ++i0;
    if (i0 == d.size()) i0 = 0;
  }
  if (i0 >= d.size()) throw std::invalid_argument("osgood_weighted_integral: start index out of range");
  std::vector<double> f(d.size() - i0);
  for (std::size_t i = i0; i < d.size(); ++i) {
    if (d.scaled[i] < -opt.tol)
      throw std::invalid_argument("osgood_weighted_integral: deficit is negative on the integration range");
    if (d.deficit[i] == 0.0) continue;
    const double gi = g(d.logY[i]);
    if (!(gi > 0.0)) throw std::invalid_argument("osgood_weighted_integral: g must be positive");
    f[i - i0] = a * d.deficit[i] / gi;
  }
  OsgoodIntegral r;
  r.start = i0;
  r.s_start = d.logY[i0];
  r.s_end = d.logY.back();
  r.value = trapezoid(std::vector<double>(d.t.begin() + i0, d.t.end()), f);
  return r;
}

inline CriterionVerdict eval_osgood(const DiagnosticSeries& series, double T_star, const std::function<double(double)>& g,
                                    const CriteriaOptions& opt = {}) {
  auto v = detail::make_verdict("osgood", series, T_star);
  OsgoodIntegral r;
  try {
    r = osgood_weighted_integral(series, T_star, g, std::nullopt, opt);
  } catch (const UnsupportedCriterion&) {
    throw;
  } catch (const std::invalid_argument& e) {
    v.outcome = Outcome::inconclusive;
    v.notes.push_back(std::string("weighted integral not applicable: ") + e.what());
    v.window = {0, series.size()};
    return v;
  }
  v.evidence["weighted_integral"] = r.value;
  v.evidence["s_start"] = r.s_start;
  v.evidence["s_end"] = r.s_end;
  v.window = {r.start, series.size()};
  v.outcome = std::isfinite(r.value) ? Outcome::satisfied : Outcome::violated;
  return v;
}

// ---------------------------------------------------------------------------
// Batch evaluation
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& criterion_ids() {
  static const std::vector<std::string> ids = {"lower_bound",       "integral_condition", "log_corrected",
                                               "log_corrected_sup", "log_corrected_sup_scaled",
                                               "trichotomy",        "osgood",             "representation"};
  return ids;
}

/// Evaluates each criterion for each T*, criteria outer, T* inner.
inline std::vector<CriterionVerdict> evaluate_criteria(const DiagnosticSeries& series, const std::vector<std::string>& ids,
                                                       const std::vector<double>& T_stars, double eps0,
                                                       const CriteriaOptions& opt = {}) {
  std::vector<CriterionVerdict> out;
  for (const auto& id : ids) {
    if (std::find(criterion_ids().begin(), criterion_ids().end(), id) == criterion_ids().end())
      throw std::invalid_argument("unknown criterion '" + id + "'");
    for (double T : T_stars) {
      if (id == "lower_bound") {
        out.push_back(eval_lower_bound(series, T, opt));
      } else if (id == "integral_condition") {
        out.push_back(eval_integral_condition(series, T, opt));
      } else if (id == "log_corrected") {
        out.push_back(eval_log_corrected(series, T, eps0, opt));
      } else if (id == "log_corrected_sup") {
        out.push_back(eval_log_corrected(series, T, eps0, opt, true));
      } else if (id == "log_corrected_sup_scaled") {
        out.push_back(eval_log_corrected(series, T, eps0, opt, true, scaling_law(series.meta()).threshold()));
      } else if (id == "trichotomy") {
        out.push_back(classify_trichotomy(series, T, opt));
      } else if (id == "osgood") {
        out.push_back(eval_osgood(series, T, [](double s) { return s * s; }, opt));
      } else {
        out.push_back(eval_representation(series, T));
      }
    }
  }
  return out;
}

}  // namespace blowdiag
