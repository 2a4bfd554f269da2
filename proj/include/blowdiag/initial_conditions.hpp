#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>

#include "blowdiag/spectral.hpp"

namespace blowdiag {

/// Largest retained wavenumber for random fields: below the 2/3 cutoff, at most 8.
inline int default_cutoff(int n) { return std::min(8, n / 3 - 1); }

/// ω = −2A cos x₁ cos x₂, the vorticity of the Taylor–Green cell.
inline Field taylor_green_vorticity(const Grid& grid, double amplitude = 1.0) {
  return Field::sample(grid, [&](const auto& x) { return -2.0 * amplitude * std::cos(x[0]) * std::cos(x[1]); });
}

/// v = A(cos x₁ sin x₂, −sin x₁ cos x₂) in 2D, or the 3D cell
/// A(cos x₁ sin x₂ sin x₃, −sin x₁ cos x₂ sin x₃, 0).
inline Field taylor_green_velocity(const Grid& grid, double amplitude = 1.0) {
  Field v(grid, grid.dim());
  for_each_point(grid, [&](std::size_t i, const std::array<double, 3>& x) {
    const double z = grid.dim() == 3 ? std::sin(x[2]) : 1.0;
    v(0, i) = amplitude * std::cos(x[0]) * std::sin(x[1]) * z;
    v(1, i) = -amplitude * std::sin(x[0]) * std::cos(x[1]) * z;
  });
  return v;
}

/// θ = A sin(m x₁).
inline Field sqg_single_mode(const Grid& grid, int mode = 1, double amplitude = 1.0) {
  return Field::sample(grid, [&](const auto& x) { return amplitude * std::sin(mode * x[0]); });
}

namespace detail {

// Fills a Hermitian spectrum with |ξ|^{-slope} amplitudes and random phases on
// 1 <= |ξ| <= cutoff. Modes are visited in storage order, so a seed fixes the field.
inline void fill_random_spectrum(Spectrum& s, int c, std::mt19937_64& rng, double slope, int cutoff) {
  const Grid& grid = s.grid();
  std::uniform_real_distribution<double> phase(0.0, two_pi);
  for_each_mode(grid, [&](std::size_t, const Index3& xi) {
    const double k2 = norm_sq(xi);
    if (k2 == 0.0 || k2 > static_cast<double>(cutoff) * cutoff) return;
    int lead = 0;
    for (int d = 0; d < grid.dim(); ++d) {
      if (xi[d] != 0) {
        lead = xi[d];
        break;
      }
    }
    if (lead < 0) return;
    const double amp = std::pow(k2, -0.5 * slope);
    const complex z = std::polar(amp, phase(rng));
    Index3 pos{0, 0, 0}, neg{0, 0, 0};
    for (int d = 0; d < grid.dim(); ++d) {
      pos[d] = grid.slot(xi[d]);
      neg[d] = grid.slot(-xi[d]);
    }
    s(c, grid.ravel(pos)) = z;
    s(c, grid.ravel(neg)) = std::conj(z);
  });
}

inline double rms(const Field& f) {
  double acc = 0.0;
  for (double v : f.values()) acc += v * v;
  return std::sqrt(acc / static_cast<double>(f.points()));
}

}  // namespace detail

/// Mean-free random scalar with power-law spectrum, RMS normalized to amplitude.
inline Field random_smooth_scalar(const Grid& grid, std::uint64_t seed, double slope = 4.0, int cutoff = -1,
                                  double amplitude = 1.0) {
  if (cutoff < 0) cutoff = default_cutoff(grid.n());
  if (cutoff < 1) throw std::invalid_argument("random_smooth_scalar: cutoff must be >= 1");
  std::mt19937_64 rng(seed);
  Spectrum s(grid, 1);
  detail::fill_random_spectrum(s, 0, rng, slope, cutoff);
  Field f = inverse(s);
  const double r = detail::rms(f);
  if (r > 0.0) f *= amplitude / r;
  return f;
}

/// Random divergence-free velocity with power-law spectrum, RMS magnitude normalized to amplitude.
inline Field random_divergence_free(const Grid& grid, std::uint64_t seed, double slope = 4.0, int cutoff = -1,
                                    double amplitude = 1.0) {
  if (cutoff < 0) cutoff = default_cutoff(grid.n());
  if (cutoff < 1) throw std::invalid_argument("random_divergence_free: cutoff must be >= 1");
  std::mt19937_64 rng(seed);
  Spectrum s(grid, grid.dim());
  for (int c = 0; c < grid.dim(); ++c) detail::fill_random_spectrum(s, c, rng, slope, cutoff);
  Field v = inverse(leray_project(s));
  const double r = detail::rms(v) * std::sqrt(static_cast<double>(grid.dim()));
  if (r > 0.0) v *= amplitude / r;
  return v;
}

// ---------------------------------------------------------------------------
// Raw grid files: three little-endian int64 (dim, n, components) followed by
// components * n^dim little-endian float64 values, component-major, points
// row-major with axis 0 slowest.
// ---------------------------------------------------------------------------

namespace detail {

inline std::uint64_t to_little_endian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return r;
  }
}

inline void put_u64(std::ostream& os, std::uint64_t v) {
  v = to_little_endian(v);
  os.write(reinterpret_cast<const char*>(&v), 8);
}

inline std::uint64_t get_u64(std::istream& is) {
  std::uint64_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 8);
  if (!is) throw std::runtime_error("raw grid: unexpected end of file");
  return to_little_endian(v);
}

}  // namespace detail

inline void write_raw_grid(const std::string& path, const Field& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("raw grid: cannot open " + path + " for writing");
  detail::put_u64(os, static_cast<std::uint64_t>(f.grid().dim()));
  detail::put_u64(os, static_cast<std::uint64_t>(f.grid().n()));
  detail::put_u64(os, static_cast<std::uint64_t>(f.components()));
  for (double v : f.values()) detail::put_u64(os, std::bit_cast<std::uint64_t>(v));
  if (!os) throw std::runtime_error("raw grid: write failed for " + path);
}

inline Field read_raw_grid(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("raw grid: cannot open " + path);
  const auto dim = static_cast<int>(detail::get_u64(is));
  const auto n = static_cast<int>(detail::get_u64(is));
  const auto comps = static_cast<int>(detail::get_u64(is));
  Grid grid(dim, n);
  Field f(grid, comps);
  for (double& v : f.values()) v = std::bit_cast<double>(detail::get_u64(is));
  f.require_finite("read_raw_grid");
  return f;
}

}  // namespace blowdiag
