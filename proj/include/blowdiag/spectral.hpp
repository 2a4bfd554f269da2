#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "blowdiag/fft.hpp"
#include "blowdiag/field.hpp"
#include "blowdiag/grid.hpp"

namespace blowdiag {

using MultiIndex = Index3;

// ---------------------------------------------------------------------------
// Transforms
// ---------------------------------------------------------------------------

/// Forward transform; rejects non-finite samples.
inline Spectrum transform(const Field& f) {
  f.require_finite("transform");
  const Grid& grid = f.grid();
  Spectrum s(grid, f.components());
  std::vector<complex> buf(f.points());
  const double scale = 1.0 / static_cast<double>(f.points());
  for (int c = 0; c < f.components(); ++c) {
    auto src = f.component(c);
    std::transform(src.begin(), src.end(), buf.begin(), [](double v) { return complex(v, 0.0); });
    auto dst = s.component(c);
    fft::forward(buf.data(), dst.data(), grid);
    for (auto& z : dst) z *= scale;
  }
  return s;
}

/// Inverse transform. The imaginary part of the synthesis is discarded, which
/// also drops odd-order contributions of the Nyquist slot.
inline Field inverse(const Spectrum& s) {
  const Grid& grid = s.grid();
  Field f(grid, s.components());
  std::vector<complex> buf(s.modes());
  for (int c = 0; c < s.components(); ++c) {
    fft::backward(s.component(c).data(), buf.data(), grid);
    auto dst = f.component(c);
    for (std::size_t i = 0; i < buf.size(); ++i) dst[i] = buf[i].real();
  }
  return f;
}

inline double norm_sq(const Index3& xi) {
  return static_cast<double>(xi[0]) * xi[0] + static_cast<double>(xi[1]) * xi[1] +
         static_cast<double>(xi[2]) * xi[2];
}

/// Applies a per-mode multiplier m(ξ) to every component.
template <class Mult>
Spectrum apply_multiplier(const Spectrum& s, Mult&& m) {
  Spectrum out(s.grid(), s.components());
  for_each_mode(s.grid(), [&](std::size_t idx, const Index3& xi) {
    const complex factor = m(xi);
    for (int c = 0; c < s.components(); ++c) out(c, idx) = factor * s(c, idx);
  });
  return out;
}

/// Zeros every mode with some |ξ_j| > n/3 (two-thirds rule).
inline Spectrum dealias(const Spectrum& s) {
  const int n = s.grid().n();
  const int dim = s.grid().dim();
  return apply_multiplier(s, [&](const Index3& xi) {
    for (int d = 0; d < dim; ++d)
      if (3 * std::abs(xi[d]) > n) return complex(0.0);
    return complex(1.0);
  });
}

inline Field dealias(const Field& f) { return inverse(dealias(transform(f))); }

// ---------------------------------------------------------------------------
// Derivatives and Sobolev conventions
// ---------------------------------------------------------------------------

/// (iξ)^m for a single axis.
inline complex i_power(int xi, int m) {
  static const complex units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return units[m % 4] * std::pow(static_cast<double>(xi), m);
}

inline complex derivative_symbol(const Index3& xi, const MultiIndex& beta) {
  complex f(1.0);
  for (int d = 0; d < 3; ++d)
    if (beta[d] != 0) f *= i_power(xi[d], beta[d]);
  return f;
}

inline Spectrum derivative(const Spectrum& s, const MultiIndex& beta) {
  return apply_multiplier(s, [&](const Index3& xi) { return derivative_symbol(xi, beta); });
}

/// ∂^β f, exact for resolved modes.
inline Field derivative(const Field& f, const MultiIndex& beta) {
  return inverse(derivative(transform(f), beta));
}

/// All multi-indices β with |β| = k in dim dimensions, β_0 descending.
inline std::vector<MultiIndex> multi_indices(int dim, int k) {
  std::vector<MultiIndex> out;
  if (dim == 2) {
    for (int a = k; a >= 0; --a) out.push_back({a, k - a, 0});
  } else {
    for (int a = k; a >= 0; --a)
      for (int b = k - a; b >= 0; --b) out.push_back({a, b, k - a - b});
  }
  return out;
}

inline double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

/// √(k!/β!), the weight making Σ_β w_β² (∂^β f)² the squared norm of D^k f.
inline double multinomial_weight(const MultiIndex& beta) {
  const int k = beta[0] + beta[1] + beta[2];
  return std::sqrt(factorial(k) / (factorial(beta[0]) * factorial(beta[1]) * factorial(beta[2])));
}

/// Weighted k-th derivative tensor: one output component per (input component, β).
inline Field dk_tensor(const Field& f, int k) {
  if (k < 0) throw std::invalid_argument("dk_tensor: k must be >= 0");
  const auto betas = multi_indices(f.grid().dim(), k);
  const Spectrum s = transform(f);
  Field out(f.grid(), f.components() * static_cast<int>(betas.size()));
  int oc = 0;
  for (int c = 0; c < f.components(); ++c) {
    Spectrum single(f.grid(), 1);
    std::copy(s.component(c).begin(), s.component(c).end(), single.component(0).begin());
    for (const auto& beta : betas) {
      const double w = multinomial_weight(beta);
      Field d = inverse(derivative(single, beta));
      auto dst = out.component(oc++);
      auto src = d.component(0);
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = w * src[i];
    }
  }
  return out;
}

/// ‖D^k f‖_{L²} through the |ξ|^k multiplier, summed over components.
inline double dk_seminorm_l2(const Spectrum& s, int k) {
  if (k < 0) throw std::invalid_argument("dk_seminorm_l2: k must be >= 0");
  double acc = 0.0;
  for_each_mode(s.grid(), [&](std::size_t idx, const Index3& xi) {
    const double w = std::pow(norm_sq(xi), k);
    if (w == 0.0) return;
    for (int c = 0; c < s.components(); ++c) acc += w * std::norm(s(c, idx));
  });
  return std::sqrt(acc * s.grid().domain_volume());
}

inline double dk_seminorm_l2(const Field& f, int k) { return dk_seminorm_l2(transform(f), k); }

/// ∫ D^k f · D^k g dx summed over components, evaluated spectrally.
inline double dk_inner(const Spectrum& f, const Spectrum& g, int k) {
  double acc = 0.0;
  for_each_mode(f.grid(), [&](std::size_t idx, const Index3& xi) {
    const double w = std::pow(norm_sq(xi), k);
    if (w == 0.0) return;
    for (int c = 0; c < f.components(); ++c) acc += w * (f(c, idx) * std::conj(g(c, idx))).real();
  });
  return acc * f.grid().domain_volume();
}

// ---------------------------------------------------------------------------
// Norms and quadrature
// ---------------------------------------------------------------------------

/// Pointwise Euclidean magnitude over components.
inline std::vector<double> magnitude(const Field& f) {
  std::vector<double> m(f.points(), 0.0);
  for (int c = 0; c < f.components(); ++c) {
    auto v = f.component(c);
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += v[i] * v[i];
  }
  for (double& x : m) x = std::sqrt(x);
  return m;
}

/// L^p norm by uniform quadrature; p = ∞ gives the largest sampled magnitude.
inline double lp_norm(const Field& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  f.require_finite("lp_norm");
  const auto m = magnitude(f);
  if (std::isinf(p)) return m.empty() ? 0.0 : *std::max_element(m.begin(), m.end());
  double acc = 0.0;
  if (p == 2.0) {
    for (double x : m) acc += x * x;
  } else {
    for (double x : m) acc += std::pow(x, p);
  }
  return std::pow(acc * f.grid().cell_volume(), 1.0 / p);
}

/// ∫ f·g dx by uniform quadrature, summed over components.
inline double inner(const Field& f, const Field& g) {
  if (f.components() != g.components() || !(f.grid() == g.grid()))
    throw std::invalid_argument("inner: shape mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < f.values().size(); ++i) acc += f.values()[i] * g.values()[i];
  return acc * f.grid().cell_volume();
}

namespace detail {

// Value, gradient and Hessian of the trigonometric interpolant at x.
struct LocalJet {
  double value = 0.0;
  std::array<double, 3> grad{};
  std::array<std::array<double, 3>, 3> hess{};
};

inline LocalJet evaluate_jet(const Spectrum& s, const std::vector<std::size_t>& active,
                             const std::array<double, 3>& x) {
  LocalJet jet;
  const int dim = s.grid().dim();
  for (std::size_t idx : active) {
    const Index3 xi = s.grid().wavevector(idx);
    double phase = 0.0;
    for (int d = 0; d < dim; ++d) phase += xi[d] * x[d];
    const complex e = s(0, idx) * complex(std::cos(phase), std::sin(phase));
    jet.value += e.real();
    for (int a = 0; a < dim; ++a) {
      jet.grad[a] += (complex(0, xi[a]) * e).real();
      for (int b = 0; b < dim; ++b) jet.hess[a][b] -= xi[a] * xi[b] * e.real();
    }
  }
  return jet;
}

// Solves H dx = -g for dim 2 or 3 by Cramer's rule; returns false if singular.
inline bool newton_direction(const LocalJet& jet, int dim, std::array<double, 3>& dx) {
  const auto& H = jet.hess;
  if (dim == 2) {
    const double det = H[0][0] * H[1][1] - H[0][1] * H[1][0];
    if (std::abs(det) < 1e-300) return false;
    dx[0] = -(H[1][1] * jet.grad[0] - H[0][1] * jet.grad[1]) / det;
    dx[1] = -(-H[1][0] * jet.grad[0] + H[0][0] * jet.grad[1]) / det;
    dx[2] = 0.0;
    return true;
  }
  auto det3 = [](const std::array<std::array<double, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const double det = det3(H);
  if (std::abs(det) < 1e-300) return false;
  for (int c = 0; c < 3; ++c) {
    auto m = H;
    for (int r = 0; r < 3; ++r) m[r][c] = -jet.grad[r];
    dx[c] = det3(m) / det;
  }
  return true;
}

}  // namespace detail

/// Supremum of |f| for a scalar field, refined off-grid by Newton iteration on
/// the trigonometric interpolant starting from the largest grid local maxima.
inline double sup_norm_refined(const Field& f) {
  f.require_scalar("sup_norm_refined");
  const Grid& grid = f.grid();
  const auto vals = f.component(0);
  const double grid_max = f.max_abs();
  if (grid_max == 0.0) return 0.0;

  const Spectrum s = transform(f);
  double cmax = 0.0;
  for (const auto& z : s.component(0)) cmax = std::max(cmax, std::abs(z));
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < s.modes(); ++i)
    if (std::abs(s(0, i)) > 1e-15 * cmax) active.push_back(i);

  // Grid local maxima of |f| within 10% of the grid maximum.
  std::vector<std::size_t> candidates;
  const int n = grid.n();
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double a = std::abs(vals[i]);
    if (a < 0.9 * grid_max) continue;
    const Index3 p = grid.unravel(i);
    bool is_max = true;
    for (int d = 0; d < grid.dim() && is_max; ++d) {
      for (int step : {-1, 1}) {
        Index3 q = p;
        q[d] = (q[d] + step + n) % n;
        if (std::abs(vals[grid.ravel(q)]) > a) {
          is_max = false;
          break;
        }
      }
    }
    if (is_max) candidates.push_back(i);
  }
  std::sort(candidates.begin(), candidates.end(),
            [&](std::size_t a, std::size_t b) { return std::abs(vals[a]) > std::abs(vals[b]); });
  if (candidates.size() > 8) candidates.resize(8);

  double best = grid_max;
  const double h = grid.spacing();
  for (std::size_t c : candidates) {
    const Index3 p = grid.unravel(c);
    std::array<double, 3> x{p[0] * h, p[1] * h, p[2] * h};
    for (int iter = 0; iter < 30; ++iter) {
      const auto jet = detail::evaluate_jet(s, active, x);
      std::array<double, 3> dx{};
      if (!detail::newton_direction(jet, grid.dim(), dx)) break;
      double step = 0.0;
      for (int d = 0; d < grid.dim(); ++d) step = std::max(step, std::abs(dx[d]));
      if (step > h) {
        for (auto& v : dx) v *= h / step;
      }
      for (int d = 0; d < grid.dim(); ++d) x[d] += dx[d];
      if (step < 1e-14) break;
    }
    best = std::max(best, std::abs(detail::evaluate_jet(s, active, x).value));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Vector calculus
// ---------------------------------------------------------------------------

/// Gradient: scalar → dim components; vector → dim*dim components with
/// component i*dim + j holding ∂_j f_i.
inline Field gradient(const Field& f) {
  const Grid& grid = f.grid();
  const int dim = grid.dim();
  const Spectrum s = transform(f);
  Field out(grid, f.components() * dim);
  Spectrum tmp(grid, 1);
  for (int c = 0; c < f.components(); ++c) {
    for (int j = 0; j < dim; ++j) {
      for_each_mode(grid, [&](std::size_t idx, const Index3& xi) { tmp(0, idx) = complex(0, xi[j]) * s(c, idx); });
      Field d = inverse(tmp);
      std::copy(d.component(0).begin(), d.component(0).end(), out.component(c * dim + j).begin());
    }
  }
  return out;
}

inline Spectrum divergence(const Spectrum& u) {
  const int dim = u.grid().dim();
  if (u.components() != dim) throw std::invalid_argument("divergence: expected a vector field");
  Spectrum out(u.grid(), 1);
  for_each_mode(u.grid(), [&](std::size_t idx, const Index3& xi) {
    complex acc(0.0);
    for (int j = 0; j < dim; ++j) acc += complex(0, xi[j]) * u(j, idx);
    out(0, idx) = acc;
  });
  return out;
}

inline Field divergence(const Field& u) {
  u.require_vector("divergence");
  return inverse(divergence(transform(u)));
}

/// Scalar curl ∂₁v₂ − ∂₂v₁ of a 2D vector field.
inline Field curl_2d(const Field& v) {
  if (v.grid().dim() != 2) throw std::invalid_argument("curl_2d: expected a 2D grid");
  v.require_vector("curl_2d");
  const Spectrum s = transform(v);
  Spectrum out(v.grid(), 1);
  for_each_mode(v.grid(), [&](std::size_t idx, const Index3& xi) {
    out(0, idx) = complex(0, xi[0]) * s(1, idx) - complex(0, xi[1]) * s(0, idx);
  });
  return inverse(out);
}

inline Field curl_3d(const Field& v) {
  if (v.grid().dim() != 3) throw std::invalid_argument("curl_3d: expected a 3D grid");
  v.require_vector("curl_3d");
  const Spectrum s = transform(v);
  Spectrum out(v.grid(), 3);
  for_each_mode(v.grid(), [&](std::size_t idx, const Index3& xi) {
    const complex i1(0, xi[0]), i2(0, xi[1]), i3(0, xi[2]);
    out(0, idx) = i2 * s(2, idx) - i3 * s(1, idx);
    out(1, idx) = i3 * s(0, idx) - i1 * s(2, idx);
    out(2, idx) = i1 * s(1, idx) - i2 * s(0, idx);
  });
  return inverse(out);
}

/// ∇⊥f = (−∂₂f, ∂₁f) for a 2D scalar.
inline Field perp_gradient(const Field& f) {
  if (f.grid().dim() != 2) throw std::invalid_argument("perp_gradient: expected a 2D grid");
  f.require_scalar("perp_gradient");
  const Spectrum s = transform(f);
  Spectrum out(f.grid(), 2);
  for_each_mode(f.grid(), [&](std::size_t idx, const Index3& xi) {
    out(0, idx) = -complex(0, xi[1]) * s(0, idx);
    out(1, idx) = complex(0, xi[0]) * s(0, idx);
  });
  return inverse(out);
}

// ---------------------------------------------------------------------------
// Singular integrals
// ---------------------------------------------------------------------------

/// Riesz transform R_j, multiplier iξ_j/|ξ|; the mean mode maps to zero.
inline Spectrum riesz(const Spectrum& s, int j) {
  return apply_multiplier(s, [&](const Index3& xi) {
    const double k2 = norm_sq(xi);
    return k2 == 0.0 ? complex(0.0) : complex(0.0, xi[j] / std::sqrt(k2));
  });
}

inline Field riesz(const Field& f, int j) {
  f.require_scalar("riesz");
  if (j < 0 || j >= f.grid().dim()) throw std::invalid_argument("riesz: direction out of range");
  return inverse(riesz(transform(f), j));
}

/// (−Δ)^{-1/2}, multiplier 1/|ξ|; the mean mode maps to zero.
inline Field inv_sqrt_laplacian(const Field& f) {
  f.require_scalar("inv_sqrt_laplacian");
  return inverse(apply_multiplier(transform(f), [](const Index3& xi) {
    const double k2 = norm_sq(xi);
    return k2 == 0.0 ? complex(0.0) : complex(1.0 / std::sqrt(k2));
  }));
}

/// v = ∇⊥Δ^{-1}ω for mean-free 2D vorticity.
inline Field biot_savart_2d(const Field& omega) {
  if (omega.grid().dim() != 2) throw std::invalid_argument("biot_savart_2d: expected a 2D grid");
  omega.require_scalar("biot_savart_2d");
  const double scale = std::max(1.0, omega.max_abs());
  if (std::abs(omega.mean()) > 1e-10 * scale) {
    throw std::invalid_argument("biot_savart_2d: vorticity must be mean-free");
  }
  const Spectrum w = transform(omega);
  Spectrum v(omega.grid(), 2);
  for_each_mode(omega.grid(), [&](std::size_t idx, const Index3& xi) {
    const double k2 = norm_sq(xi);
    if (k2 == 0.0) return;
    const complex psi = -w(0, idx) / k2;
    v(0, idx) = -complex(0, xi[1]) * psi;
    v(1, idx) = complex(0, xi[0]) * psi;
  });
  return inverse(v);
}

inline Spectrum leray_project(const Spectrum& u) {
  const int dim = u.grid().dim();
  Spectrum out = u;
  for_each_mode(u.grid(), [&](std::size_t idx, const Index3& xi) {
    const double k2 = norm_sq(xi);
    if (k2 == 0.0) return;
    complex dot(0.0);
    for (int j = 0; j < dim; ++j) dot += static_cast<double>(xi[j]) * u(j, idx);
    for (int j = 0; j < dim; ++j) out(j, idx) -= static_cast<double>(xi[j]) * dot / k2;
  });
  return out;
}

/// Orthogonal projection onto divergence-free fields.
inline Field leray_project(const Field& u) {
  u.require_vector("leray_project");
  return inverse(leray_project(transform(u)));
}

// ---------------------------------------------------------------------------
// Products
// ---------------------------------------------------------------------------

/// Dealiased (v·∇)q in spectral form, q scalar or vector.
inline Spectrum advect_spectrum(const Field& v, const Field& q) {
  v.require_vector("advect");
  const Grid& grid = v.grid();
  const int dim = grid.dim();
  const Field grad_q = gradient(q);
  Field prod(grid, q.components());
  for (int c = 0; c < q.components(); ++c) {
    auto dst = prod.component(c);
    for (int j = 0; j < dim; ++j) {
      auto vj = v.component(j);
      auto dq = grad_q.component(c * dim + j);
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += vj[i] * dq[i];
    }
  }
  return dealias(transform(prod));
}

inline Field advect(const Field& v, const Field& q) { return inverse(advect_spectrum(v, q)); }

/// π = Σ_{j,k} R_jR_k(v_j v_k), built from the dealiased products.
inline Field pressure_from_velocity(const Field& v) {
  v.require_vector("pressure_from_velocity");
  const Grid& grid = v.grid();
  const int dim = grid.dim();
  Spectrum pi(grid, 1);
  for (int j = 0; j < dim; ++j) {
    for (int k = j; k < dim; ++k) {
      Field prod(grid, 1);
      auto a = v.component(j);
      auto b = v.component(k);
      auto dst = prod.component(0);
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = a[i] * b[i];
      const Spectrum ps = dealias(transform(prod));
      const double mult = (j == k) ? 1.0 : 2.0;
      for_each_mode(grid, [&](std::size_t idx, const Index3& xi) {
        const double k2 = norm_sq(xi);
        if (k2 == 0.0) return;
        pi(0, idx) -= mult * xi[j] * xi[k] / k2 * ps(0, idx);
      });
    }
  }
  return inverse(pi);
}

}  // namespace blowdiag
