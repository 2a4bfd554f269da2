#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "blowdiag/flow_models.hpp"
#include "blowdiag/spectral.hpp"

namespace blowdiag {

/// Shortest-safe round-trip text for a double.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Series records
// ---------------------------------------------------------------------------

/// Scalar diagnostics recorded per sample. The order is the CSV column order
/// (after the leading t column) and must only ever be appended to.
enum class Column : int {
  alpha_k,
  lambda_p,
  gamma_p,
  delta_p,
  alpha_kp,
  dk_v_l2,
  v_lp,
  v_l2,
  dk_theta_lp,
  theta_lp,
  grad_v_linf,
  omega_linf,
  alpha_linf,
  X,
  count
};

inline constexpr int column_count = static_cast<int>(Column::count);

inline const char* column_name(Column c) {
  static constexpr const char* names[column_count] = {
      "alpha_k", "lambda_p", "gamma_p",   "delta_p",     "alpha_kp",   "dk_v_l2",    "v_lp",
      "v_l2",    "dk_theta_lp", "theta_lp", "grad_v_linf", "omega_linf", "alpha_linf", "X"};
  return names[static_cast<int>(c)];
}

inline std::optional<Column> parse_column(const std::string& name) {
  for (int i = 0; i < column_count; ++i)
    if (name == column_name(static_cast<Column>(i))) return static_cast<Column>(i);
  return std::nullopt;
}

/// One record; quantities that do not apply to the model stay empty.
struct DiagnosticSample {
  double t = 0.0;
  std::array<std::optional<double>, column_count> values{};

  std::optional<double>& operator[](Column c) { return values[static_cast<int>(c)]; }
  const std::optional<double>& operator[](Column c) const { return values[static_cast<int>(c)]; }

  double value(Column c) const {
    const auto& v = (*this)[c];
    if (!v) throw std::out_of_range(std::string("sample has no value for column ") + column_name(c));
    return *v;
  }
};

/// Empirical constants fitted on random field families.
struct FittedConstants {
  std::optional<double> commutator;   ///< sup of the commutator-estimate ratio
  std::optional<double> alpha_bound;  ///< sup |α_k| / ‖∇v‖_∞
  std::optional<double> gn;           ///< sup of the Gagliardo–Nirenberg ratio
  std::optional<double> growth;       ///< sup |rate| / X, the constant in dX/dt ≤ a·C·X²
  std::optional<double> K;            ///< lower-bound threshold 1 / (2 a C)
};

struct SeriesMetadata {
  Model model = Model::euler2d;
  int dim = 2;  ///< space dimension N
  int n = 0;    ///< grid points per axis; 0 for synthetic series
  int k = 3;
  double p = 2.0;
  double nu = 0.0;
  std::optional<double> base_norm;  ///< ‖v₀‖_{L²} (euler) or ‖θ₀‖_{L^p} (sqg)
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string source = "simulation";
  std::map<std::string, std::string> extra;
  FittedConstants constants;
};

class DiagnosticSeries {
 public:
  DiagnosticSeries() = default;
  explicit DiagnosticSeries(SeriesMetadata meta) : meta_(std::move(meta)) {}

  void append(DiagnosticSample s) {
    if (!samples_.empty() && !(s.t > samples_.back().t)) {
      throw std::invalid_argument("DiagnosticSeries: sample times must be strictly increasing");
    }
    samples_.push_back(std::move(s));
  }

  const SeriesMetadata& meta() const { return meta_; }
  SeriesMetadata& meta() { return meta_; }
  const std::vector<DiagnosticSample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  const DiagnosticSample& operator[](std::size_t i) const { return samples_[i]; }

  bool has_column(Column c) const {
    return !samples_.empty() && std::all_of(samples_.begin(), samples_.end(), [&](const auto& s) { return s[c].has_value(); });
  }

  std::vector<double> times() const {
    std::vector<double> t;
    t.reserve(samples_.size());
    for (const auto& s : samples_) t.push_back(s.t);
    return t;
  }

  std::vector<double> column(Column c) const {
    std::vector<double> out;
    out.reserve(samples_.size());
    for (const auto& s : samples_) out.push_back(s.value(c));
    return out;
  }

 private:
  SeriesMetadata meta_;
  std::vector<DiagnosticSample> samples_;
};

// ---------------------------------------------------------------------------
// Scaling laws
// ---------------------------------------------------------------------------

/// Scale-invariant window Y = (T*−t)^e · Q^a · B^{1−a} for norm Q and base norm B.
///
/// With rate r = d log Q/dt, dY/dt = a (r − c/(T*−t)) Y, where c = e/a is the
/// critical self-similar coefficient.
struct ScalingLaw {
  double time_exponent = 1.0;
  double norm_exponent = 1.0;
  Column rate = Column::alpha_k;
  Column norm = Column::dk_v_l2;

  double threshold() const { return time_exponent / norm_exponent; }
};

inline ScalingLaw scaling_law(Model model, int k, double p, int dim) {
  switch (model) {
    case Model::euler2d:
      if (k < 1) throw std::invalid_argument("scaling_law: k must be >= 1");
      return {1.0, (dim + 2.0) / (2.0 * k), Column::alpha_k, Column::dk_v_l2};
    case Model::ns2d:
      if (p < dim) throw std::invalid_argument("scaling_law: navier-stokes window requires p >= N");
      return {(p - dim) / (2.0 * p), 1.0, Column::lambda_p, Column::v_lp};
    case Model::sqg:
      if (k < 1 || p < 1) throw std::invalid_argument("scaling_law: invalid k or p");
      return {1.0, (p + 2.0) / (k * p), Column::alpha_kp, Column::dk_theta_lp};
  }
  throw std::invalid_argument("scaling_law: unknown model");
}

inline ScalingLaw scaling_law(const SeriesMetadata& m) { return scaling_law(m.model, m.k, m.p, m.dim); }

struct ScaleVariables {
  double X;
  double Y;
};

/// X = Q^a B^{1−a} and Y = (T_ref − t)^e X.
inline ScaleVariables scale_x(const ScalingLaw& law, double t, double norm, double base, double T_ref) {
  if (!(T_ref > t)) throw std::invalid_argument("scale_x: reference time must exceed t");
  const double a = law.norm_exponent;
  const double X = std::pow(norm, a) * (a == 1.0 ? 1.0 : std::pow(base, 1.0 - a));
  return {X, std::pow(T_ref - t, law.time_exponent) * X};
}

inline ScaleVariables scale_x(const DiagnosticSeries& series, std::size_t i, double T_ref) {
  const auto law = scaling_law(series.meta());
  return scale_x(law, series[i].t, series[i].value(law.norm), series.meta().base_norm.value_or(1.0), T_ref);
}

/// Admissible regularity index: k > N/2 + 1 (euler/ns) or k > 2/p + 1 (sqg).
inline bool k_admissible(Model model, int k, double p, int dim) {
  return model == Model::sqg ? k > 2.0 / p + 1.0 : k > dim / 2.0 + 1.0;
}

// ---------------------------------------------------------------------------
// Instantaneous diagnostics
// ---------------------------------------------------------------------------

/// Max over grid points of the Frobenius norm of ∇v.
inline double grad_linf(const Field& v) {
  v.require_vector("grad_linf");
  return lp_norm(gradient(v), std::numeric_limits<double>::infinity());
}

/// α_k = −∫D^k[(v·∇)v]·D^k v dx / ‖D^k v‖²; zero when D^k v vanishes.
inline double alpha_k(const Field& v, int k) {
  v.require_vector("alpha_k");
  const Spectrum vs = transform(v);
  const double den = dk_inner(vs, vs, k);
  if (den == 0.0) return 0.0;
  const Spectrum ns = advect_spectrum(v, v);
  return -dk_inner(ns, vs, k) / den;
}

namespace detail {

// ξ·Sξ with S the symmetric part of the gradient G (G[i*dim+j] = ∂_j v_i).
inline double stretching(const Field& G, std::size_t i, const std::array<double, 3>& xi, int dim) {
  double acc = 0.0;
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      const double s_ab = 0.5 * (G(b * dim + a, i) + G(a * dim + b, i));
      acc += xi[a] * s_ab * xi[b];
    }
  return acc;
}

}  // namespace detail

/// Pointwise α = ξ·Sξ with ξ = ω/|ω| for a 3D velocity; zero where ω = 0.
inline Field alpha_local(const Field& v) {
  if (v.grid().dim() != 3) throw std::invalid_argument("alpha_local: expected a 3D velocity field");
  v.require_vector("alpha_local");
  const Field G = gradient(v);
  Field out(v.grid(), 1);
  auto d = [&](int i, int j, std::size_t p) { return G(i * 3 + j, p); };
  for (std::size_t p = 0; p < v.points(); ++p) {
    std::array<double, 3> w{d(2, 1, p) - d(1, 2, p), d(0, 2, p) - d(2, 0, p), d(1, 0, p) - d(0, 1, p)};
    const double mag = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
    if (mag == 0.0) continue;
    for (auto& c : w) c /= mag;
    out(0, p) = detail::stretching(G, p, w, 3);
  }
  return out;
}

/// Pointwise α̂ = ξ·Sξ with ξ the unit tangent ∇⊥θ/|∇⊥θ| and S from v = R⊥θ; zero where ∇⊥θ = 0.
inline Field alpha_hat_local(const Field& theta) {
  if (theta.grid().dim() != 2) throw std::invalid_argument("alpha_hat_local: expected a 2D field");
  theta.require_scalar("alpha_hat_local");
  const Field G = gradient(sqg_velocity(theta));
  const Field grad_theta = gradient(theta);
  Field out(theta.grid(), 1);
  for (std::size_t p = 0; p < theta.points(); ++p) {
    std::array<double, 3> xi{-grad_theta(1, p), grad_theta(0, p), 0.0};
    const double mag = std::hypot(xi[0], xi[1]);
    if (mag == 0.0) continue;
    xi[0] /= mag;
    xi[1] /= mag;
    out(0, p) = detail::stretching(G, p, xi, 2);
  }
  return out;
}

/// γ_p, δ_p and λ_p = γ_p − ν δ_p for a velocity field.
struct LpBalance {
  double gamma = 0.0;
  double delta = 0.0;
  double lambda = 0.0;
};

/// Terms of (1/p) d/dt ‖v‖_p^p = λ_p ‖v‖_p^p. The pressure term is evaluated as
/// −∫∇π·v|v|^{p−2}dx, equal to ∫π div(v|v|^{p−2})dx after integration by parts.
inline LpBalance lp_balance(const Field& v, double p, double nu = 0.0) {
  v.require_vector("lp_balance");
  if (!(p >= 2.0)) throw std::invalid_argument("lp_balance: p must be >= 2");
  const Grid& grid = v.grid();
  const int dim = grid.dim();
  const auto w = magnitude(v);
  double norm_p = 0.0;
  for (double x : w) norm_p += std::pow(x, p);
  norm_p *= grid.cell_volume();
  if (norm_p == 0.0) return {};

  const Field grad_pi = gradient(pressure_from_velocity(v));
  const Field G = gradient(v);
  double pressure = 0.0, dissipation = 0.0, radial = 0.0;
  for (std::size_t i = 0; i < v.points(); ++i) {
    const double weight = std::pow(w[i], p - 2.0);
    double gp_dot_v = 0.0, g2 = 0.0;
    for (int a = 0; a < dim; ++a) {
      gp_dot_v += grad_pi(a, i) * v(a, i);
      for (int b = 0; b < dim; ++b) g2 += G(a * dim + b, i) * G(a * dim + b, i);
    }
    pressure -= gp_dot_v * weight;
    dissipation += g2 * weight;
    if (p != 2.0) {
      // |∇|v||² |v|^{p−2} = |(∇v)ᵀv|² |v|^{p−4}
      double r2 = 0.0;
      for (int b = 0; b < dim; ++b) {
        double gb = 0.0;
        for (int a = 0; a < dim; ++a) gb += v(a, i) * G(a * dim + b, i);
        r2 += gb * gb;
      }
      radial += r2 * std::pow(std::max(w[i], 1e-30), p - 4.0);
    }
  }
  const double h = grid.cell_volume();
  LpBalance out;
  out.gamma = pressure * h / norm_p;
  out.delta = (dissipation + (p - 2.0) * radial) * h / norm_p;
  out.lambda = out.gamma - nu * out.delta;
  return out;
}

inline double gamma_p(const Field& v, double p) { return lp_balance(v, p).gamma; }
inline double delta_p(const Field& v, double p) { return lp_balance(v, p).delta; }
inline double lambda_p(const Field& v, double p, double nu) { return lp_balance(v, p, nu).lambda; }

/// ‖D^k f‖_{L^p} of the weighted derivative tensor.
inline double dk_lp_norm(const Field& f, int k, double p) {
  if (p == 2.0) return dk_seminorm_l2(f, k);
  return lp_norm(dk_tensor(f, k), p);
}

/// α_{k,p} = −∫D^k[(v·∇)θ]·D^kθ|D^kθ|^{p−2}dx / ‖D^kθ‖_p^p with v = R⊥θ.
inline double alpha_kp(const Field& theta, int k, double p) {
  theta.require_scalar("alpha_kp");
  if (!(p >= 2.0)) throw std::invalid_argument("alpha_kp: p must be >= 2");
  const Field Dt = dk_tensor(theta, k);
  const auto m = magnitude(Dt);
  double den = 0.0;
  for (double x : m) den += std::pow(x, p);
  if (den == 0.0) return 0.0;
  const Field adv = inverse(advect_spectrum(sqg_velocity(theta), theta));
  const Field Da = dk_tensor(adv, k);
  double num = 0.0;
  for (std::size_t i = 0; i < theta.points(); ++i) {
    double dot = 0.0;
    for (int c = 0; c < Dt.components(); ++c) dot += Da(c, i) * Dt(c, i);
    num -= dot * std::pow(std::max(m[i], 1e-30), p - 2.0);
  }
  return num / den;
}

// ---------------------------------------------------------------------------
// Inequality studies
// ---------------------------------------------------------------------------

/// ‖D^k(fg) − f D^k g‖_p / (‖∇f‖_∞‖D^{k−1}g‖_p + ‖D^k f‖_p‖g‖_∞); empty when the denominator vanishes.
inline std::optional<double> commutator_ratio(const Field& f, const Field& g, int k, double p) {
  f.require_scalar("commutator_ratio");
  g.require_scalar("commutator_ratio");
  if (k < 1) throw std::invalid_argument("commutator_ratio: k must be >= 1");
  const double inf = std::numeric_limits<double>::infinity();
  Field fg = f;
  for (std::size_t i = 0; i < fg.points(); ++i) fg(0, i) *= g(0, i);
  Field lhs = dk_tensor(fg, k);
  const Field Dg = dk_tensor(g, k);
  for (int c = 0; c < lhs.components(); ++c)
    for (std::size_t i = 0; i < lhs.points(); ++i) lhs(c, i) -= f(0, i) * Dg(c, i);
  const double rhs = lp_norm(gradient(f), inf) * dk_lp_norm(g, k - 1, p) + dk_lp_norm(f, k, p) * lp_norm(g, inf);
  if (rhs == 0.0) return std::nullopt;
  return lp_norm(lhs, p) / rhs;
}

/// ‖∇f‖_∞ / (‖D^k f‖_p^θ ‖f‖_p^{1−θ}) with θ = (p+N)/(kp); empty when the denominator vanishes.
inline std::optional<double> gn_ratio(const Field& f, int k, double p) {
  f.require_scalar("gn_ratio");
  const int dim = f.grid().dim();
  const double theta = (p + dim) / (k * p);
  const double dk = dk_lp_norm(f, k, p);
  const double base = lp_norm(f, p);
  if (dk == 0.0 || base == 0.0) return std::nullopt;
  const double num = lp_norm(gradient(f), std::numeric_limits<double>::infinity());
  return num / (std::pow(dk, theta) * std::pow(base, 1.0 - theta));
}

// ---------------------------------------------------------------------------
// Time integrals over a series
// ---------------------------------------------------------------------------

inline double trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size()) throw std::invalid_argument("trapezoid: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) acc += 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
  return acc;
}

/// Cumulative trapezoid, starting at 0.
inline std::vector<double> cumulative_trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
  std::vector<double> out(t.size(), 0.0);
  for (std::size_t i = 1; i < t.size(); ++i) out[i] = out[i - 1] + 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
  return out;
}

/// ∫‖ω‖_∞ dt over the recorded range.
inline double bkm_integral(const DiagnosticSeries& series) {
  if (series.size() < 2) throw std::invalid_argument("bkm_integral: need at least two samples");
  if (!series.has_column(Column::omega_linf)) throw std::invalid_argument("bkm_integral: series has no omega_linf column");
  return trapezoid(series.times(), series.column(Column::omega_linf));
}

/// ∫‖v‖_p^{2p/(p−N)} dt over the recorded range, p > N.
inline double serrin_integral(const DiagnosticSeries& series, double p) {
  if (series.size() < 2) throw std::invalid_argument("serrin_integral: need at least two samples");
  const int dim = series.meta().dim;
  if (!(p > dim)) throw std::invalid_argument("serrin_integral: p must exceed N");
  if (series.meta().p != p) throw std::invalid_argument("serrin_integral: series was recorded with a different p");
  if (!series.has_column(Column::v_lp)) throw std::invalid_argument("serrin_integral: series has no v_lp column");
  auto y = series.column(Column::v_lp);
  for (double& v : y) v = std::pow(v, 2.0 * p / (p - dim));
  return trapezoid(series.times(), y);
}

// ---------------------------------------------------------------------------
// Recorder
// ---------------------------------------------------------------------------

/// Computes the diagnostics applicable to a model from a flow state.
class Recorder {
 public:
  Recorder(Model model, int k, double p, double base_norm) : model_(model), k_(k), p_(p), base_(base_norm) {
    if (k < 1) throw std::invalid_argument("Recorder: k must be >= 1");
    if (!(p >= 2.0)) throw std::invalid_argument("Recorder: p must be >= 2");
  }

  /// Base norm taken from the initial state: ‖v₀‖_{L²} (euler), ‖θ₀‖_{L^p} (sqg), unused for ns.
  static Recorder for_initial_state(const FlowState& s, int k, double p) {
    double base = 1.0;
    if (s.model == Model::euler2d) base = lp_norm(velocity_of(s), 2.0);
    if (s.model == Model::sqg) base = lp_norm(s.prognostic, p);
    return Recorder(s.model, k, p, base);
  }

  double base_norm() const { return base_; }
  int k() const { return k_; }
  double p() const { return p_; }
  const ScalingLaw law() const { return scaling_law(model_, k_, p_, 2); }

  DiagnosticSample operator()(const FlowState& s) const {
    const double inf = std::numeric_limits<double>::infinity();
    DiagnosticSample out;
    out.t = s.t;
    const Field v = velocity_of(s);
    out[Column::grad_v_linf] = grad_linf(v);
    out[Column::v_l2] = lp_norm(v, 2.0);
    switch (model_) {
      case Model::euler2d:
      case Model::ns2d: {
        out[Column::dk_v_l2] = dk_seminorm_l2(v, k_);
        out[Column::v_lp] = lp_norm(v, p_);
        out[Column::omega_linf] = lp_norm(s.prognostic, inf);
        if (model_ == Model::euler2d) {
          out[Column::alpha_k] = alpha_k(v, k_);
        } else {
          const auto bal = lp_balance(v, p_, s.nu);
          out[Column::gamma_p] = bal.gamma;
          out[Column::delta_p] = bal.delta;
          out[Column::lambda_p] = bal.lambda;
        }
        break;
      }
      case Model::sqg: {
        out[Column::alpha_kp] = alpha_kp(s.prognostic, k_, p_);
        out[Column::dk_theta_lp] = dk_lp_norm(s.prognostic, k_, p_);
        out[Column::theta_lp] = lp_norm(s.prognostic, p_);
        out[Column::alpha_linf] = lp_norm(alpha_hat_local(s.prognostic), inf);
        break;
      }
    }
    const auto law = this->law();
    out[Column::X] = scale_x(law, 0.0, out.value(law.norm), base_, 1.0).X;
    return out;
  }

 private:
  Model model_;
  int k_;
  double p_;
  double base_;
};

}  // namespace blowdiag
