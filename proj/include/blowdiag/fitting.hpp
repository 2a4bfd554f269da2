#pragma once

#include <algorithm>
#include <cstdint>

#include "blowdiag/diagnostics.hpp"
#include "blowdiag/initial_conditions.hpp"

namespace blowdiag {

struct FitOptions {
  Model model = Model::euler2d;
  int k = 3;
  double p = 2.0;
  int n = 32;
  int family_size = 100;
  std::uint64_t seed = 1000;  ///< member i uses seed + i
};

/// Spectral slope of family member i; cycling slopes widens the family.
inline double family_slope(int i) {
  static constexpr double slopes[] = {2.5, 3.0, 4.0, 5.0};
  return slopes[i % 4];
}

/// Scalar member i of a random family.
inline Field family_scalar(const Grid& grid, std::uint64_t seed, int i) {
  return random_smooth_scalar(grid, seed + static_cast<std::uint64_t>(i), family_slope(i));
}

/// Sup of |α_k| / ‖∇v‖_∞ over random divergence-free velocities.
inline double fit_alpha_bound(const FitOptions& opt) {
  const Grid grid(2, opt.n);
  double sup = 0.0;
  for (int i = 0; i < opt.family_size; ++i) {
    const Field v = random_divergence_free(grid, opt.seed + static_cast<std::uint64_t>(i), family_slope(i));
    sup = std::max(sup, std::abs(alpha_k(v, opt.k)) / grad_linf(v));
  }
  return sup;
}

/// Sup of the commutator ratio over pairs (member 2i, member 2i+1).
inline double fit_commutator(const FitOptions& opt) {
  const Grid grid(2, opt.n);
  double sup = 0.0;
  for (int i = 0; i < opt.family_size; ++i) {
    const Field f = family_scalar(grid, opt.seed, 2 * i);
    const Field g = family_scalar(grid, opt.seed, 2 * i + 1);
    if (auto r = commutator_ratio(f, g, opt.k, opt.p)) sup = std::max(sup, *r);
  }
  return sup;
}

inline double fit_gn(const FitOptions& opt) {
  const Grid grid(2, opt.n);
  double sup = 0.0;
  for (int i = 0; i < opt.family_size; ++i)
    if (auto r = gn_ratio(family_scalar(grid, opt.seed, i), opt.k, opt.p)) sup = std::max(sup, *r);
  return sup;
}

/// Sup of |rate| / X, the constant C in d log Q/dt ≤ C·X (euler: α_k, sqg: α_{k,p}).
inline double fit_growth(const FitOptions& opt) {
  if (opt.model == Model::ns2d) throw std::invalid_argument("fit_growth: not defined for ns2d");
  const Grid grid(2, opt.n);
  const auto law = scaling_law(opt.model, opt.k, opt.p, 2);
  const double a = law.norm_exponent;
  double sup = 0.0;
  for (int i = 0; i < opt.family_size; ++i) {
    double rate = 0.0, X = 0.0;
    if (opt.model == Model::euler2d) {
      const Field v = random_divergence_free(grid, opt.seed + static_cast<std::uint64_t>(i), family_slope(i));
      rate = alpha_k(v, opt.k);
      X = std::pow(dk_seminorm_l2(v, opt.k), a) * std::pow(lp_norm(v, 2.0), 1.0 - a);
    } else {
      const Field th = family_scalar(grid, opt.seed, i);
      rate = alpha_kp(th, opt.k, opt.p);
      X = std::pow(dk_lp_norm(th, opt.k, opt.p), a) * std::pow(lp_norm(th, opt.p), 1.0 - a);
    }
    if (X > 0.0) sup = std::max(sup, std::abs(rate) / X);
  }
  return sup;
}

/// All constants applicable to the model; K = 1/(2aC) from the growth constant.
inline FittedConstants fit_constants(const FitOptions& opt) {
  FittedConstants c;
  c.commutator = fit_commutator(opt);
  c.gn = fit_gn(opt);
  if (opt.model != Model::ns2d) {
    c.alpha_bound = fit_alpha_bound(opt);
    c.growth = fit_growth(opt);
    const double a = scaling_law(opt.model, opt.k, opt.p, 2).norm_exponent;
    if (*c.growth > 0.0) c.K = 1.0 / (2.0 * a * *c.growth);
  }
  return c;
}

}  // namespace blowdiag
