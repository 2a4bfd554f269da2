#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "blowdiag/criteria.hpp"

namespace blowdiag {

/// Deficit shapes D(τ), τ = T*−t, realizing the behaviours near a candidate T*.
enum class SynthKind {
  self_similar,        ///< D = 0: Y constant
  decaying,            ///< rate = 0: bounded norm, Y → 0
  integrable_deficit,  ///< D = A τ^{−β}, 0 < β < 1
  divergent_deficit,   ///< D = A/τ: Y ∝ τ^{−aA}
  log_corrected        ///< D touches −cε₀/(τ log(1/τ)) at dyadic τ and stays below it
};

inline std::string to_string(SynthKind k) {
  switch (k) {
    case SynthKind::self_similar: return "self_similar";
    case SynthKind::decaying: return "decaying";
    case SynthKind::integrable_deficit: return "integrable_deficit";
    case SynthKind::divergent_deficit: return "divergent_deficit";
    case SynthKind::log_corrected: return "log_corrected";
  }
  return "unknown";
}

inline SynthKind parse_synth_kind(const std::string& s) {
  for (auto k : {SynthKind::self_similar, SynthKind::decaying, SynthKind::integrable_deficit,
                 SynthKind::divergent_deficit, SynthKind::log_corrected})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown synthetic kind '" + s +
                              "' (expected self_similar, decaying, integrable_deficit, divergent_deficit or log_corrected)");
}

struct SyntheticProfile {
  SynthKind kind = SynthKind::self_similar;
  Model model = Model::euler2d;
  int k = 3;
  double p = 2.0;
  int dim = 2;
  double T_star = 1.0;
  double Y0 = 1.0;         ///< Y at t = 0
  double amplitude = 1.0;  ///< A for integrable/divergent kinds, oscillation depth for log_corrected
  double exponent = 0.5;   ///< β for integrable_deficit
  double eps0 = 2.0;       ///< ε₀ for log_corrected
  int per_octave = 64;     ///< samples per halving of T*−t
  double tau_min = 1e-8;   ///< smallest (T*−t)/T*

  void validate() const {
    if (!(T_star > 0.0)) throw std::invalid_argument("synth: T_star must be > 0");
    if (!(Y0 > 0.0)) throw std::invalid_argument("synth: Y0 must be > 0");
    if (per_octave < 1) throw std::invalid_argument("synth: per_octave must be >= 1");
    if (!(tau_min > 0.0 && tau_min < 0.25)) throw std::invalid_argument("synth: tau_min must be in (0, 0.25)");
    if (kind == SynthKind::integrable_deficit && !(exponent > 0.0 && exponent < 1.0))
      throw std::invalid_argument("synth: integrable_deficit exponent must be in (0, 1)");
    if (kind == SynthKind::log_corrected) {
      if (!(eps0 > 1.0)) throw std::invalid_argument("synth: eps0 must be > 1");
      if (!(amplitude >= 0.0)) throw std::invalid_argument("synth: log_corrected amplitude must be >= 0");
    }
    if (!std::isfinite(amplitude)) throw std::invalid_argument("synth: amplitude must be finite");
    (void)scaling_law(model, k, p, dim);
  }
};

/// Builds a series whose rate and norm columns satisfy the exponential
/// representation of Y exactly: log Y is accumulated with the same quadrature
/// the criteria use.
///
/// Samples sit at T*−t = T*·2^{−j/per_octave}; log_corrected series start at the
/// first sample with T*−t ≤ 1/2 so that log(1/(T*−t)) > 0 throughout.
inline DiagnosticSeries synth(const SyntheticProfile& prof) {
  prof.validate();
  const ScalingLaw law = scaling_law(prof.model, prof.k, prof.p, prof.dim);
  const double c = law.threshold();
  const double a = law.norm_exponent;
  const double T = prof.T_star;

  const auto last = static_cast<int>(std::floor(prof.per_octave * std::log2(1.0 / prof.tau_min)));
  int first = 0;
  if (prof.kind == SynthKind::log_corrected && T > 0.5)
    first = static_cast<int>(std::ceil(prof.per_octave * std::log2(2.0 * T)));

  std::vector<double> t, tau, rate;
  for (int j = first; j <= last; ++j) {
    const double ti = T - T * std::exp2(-static_cast<double>(j) / prof.per_octave);
    if (!t.empty() && !(ti > t.back())) continue;
    const double ta = T - ti;
    double D = 0.0;
    switch (prof.kind) {
      case SynthKind::self_similar: D = 0.0; break;
      case SynthKind::decaying: D = -c / ta; break;
      case SynthKind::integrable_deficit: D = prof.amplitude * std::pow(ta, -prof.exponent); break;
      case SynthKind::divergent_deficit: D = prof.amplitude / ta; break;
      case SynthKind::log_corrected: {
        const double L = std::log(1.0 / ta);
        const double osc = std::sin(std::numbers::pi * std::log2(1.0 / ta));
        D = -c * prof.eps0 / (ta * L) * (1.0 + prof.amplitude * osc * osc);
        break;
      }
    }
    t.push_back(ti);
    tau.push_back(ta);
    rate.push_back(prof.kind == SynthKind::decaying ? 0.0 : c / ta + D);
  }

  SeriesMetadata meta;
  meta.model = prof.model;
  meta.dim = prof.dim;
  meta.n = 0;
  meta.k = prof.k;
  meta.p = prof.p;
  meta.base_norm = 1.0;
  meta.source = "synthetic";
  meta.extra["kind"] = to_string(prof.kind);
  meta.extra["T_star"] = format_double(prof.T_star);
  meta.extra["Y0"] = format_double(prof.Y0);
  meta.extra["amplitude"] = format_double(prof.amplitude);
  meta.extra["exponent"] = format_double(prof.exponent);
  meta.extra["eps0"] = format_double(prof.eps0);
  DiagnosticSeries series(meta);

  const auto rate_integral = cumulative_trapezoid(t, rate);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double I = rate_integral[i] - c * std::log(tau[0] / tau[i]);
    const double logY = std::log(prof.Y0) + a * I;
    // Y = τ^e Q^a (base 1)  ⇒  log Q = (log Y − e log τ)/a
    const double logQ = (logY - law.time_exponent * std::log(tau[i])) / a;
    DiagnosticSample s;
    s.t = t[i];
    s[law.rate] = rate[i];
    s[law.norm] = std::exp(logQ);
    s[Column::X] = std::exp(a * logQ);
    series.append(std::move(s));
  }
  return series;
}

/// Random fixture parameters for a kind, drawn so that the intended case is
/// unambiguous on the generated range.
inline SyntheticProfile draw_profile(SynthKind kind, Model model, int k, double p, int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  SyntheticProfile prof;
  prof.kind = kind;
  prof.model = model;
  prof.k = k;
  prof.p = p;
  prof.dim = dim;
  prof.T_star = 0.5 + 1.5 * U(rng);
  prof.Y0 = 0.5 + 1.5 * U(rng);
  switch (kind) {
    case SynthKind::integrable_deficit:
      prof.exponent = 0.6 + 0.25 * U(rng);
      prof.amplitude = (0.05 + 0.95 * U(rng)) * (U(rng) < 0.5 ? -1.0 : 1.0);
      break;
    case SynthKind::divergent_deficit: prof.amplitude = 0.1 + 0.9 * U(rng); break;
    case SynthKind::log_corrected:
      prof.T_star = 1.0;
      prof.eps0 = 1.5 + 1.5 * U(rng);
      prof.amplitude = 0.5 + U(rng);
      break;
    default: break;
  }
  return prof;
}

/// Case a fixture kind is built to exhibit.
inline Outcome intended_case(const SyntheticProfile& prof) {
  switch (prof.kind) {
    case SynthKind::self_similar: return Outcome::case_i;
    case SynthKind::integrable_deficit:
      return prof.model == Model::ns2d && prof.p == prof.dim ? Outcome::violated : Outcome::case_ii;
    case SynthKind::divergent_deficit: return prof.amplitude > 0.0 ? Outcome::case_iii : Outcome::violated;
    case SynthKind::decaying: return Outcome::violated;
    case SynthKind::log_corrected: return Outcome::inconclusive;
  }
  return Outcome::inconclusive;
}

}  // namespace blowdiag
