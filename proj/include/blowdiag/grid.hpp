#pragma once

#include <array>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace blowdiag {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Integer wavevector or grid index; unused trailing entries are zero.
using Index3 = std::array<int, 3>;

/// Uniform periodic grid on the torus [0, 2π)^dim.
///
/// Points are stored row-major with axis 0 slowest, which matches the
/// FFTW multidimensional layout. Axis j of point index i has coordinate
/// x_j = i_j * spacing().
class Grid {
 public:
  Grid(int dim, int n) : dim_(dim), n_(n) {
    if (dim != 2 && dim != 3) {
      throw std::invalid_argument("Grid: dim must be 2 or 3, got " + std::to_string(dim));
    }
    if (n < 8 || (n & (n - 1)) != 0) {
      throw std::invalid_argument("Grid: n must be a power of two >= 8, got " + std::to_string(n));
    }
  }

  int dim() const { return dim_; }
  int n() const { return n_; }
  double spacing() const { return two_pi / n_; }
  double length() const { return two_pi; }

  std::size_t size() const {
    std::size_t s = 1;
    for (int d = 0; d < dim_; ++d) s *= static_cast<std::size_t>(n_);
    return s;
  }

  /// Quadrature weight of one grid point, spacing^dim.
  double cell_volume() const {
    double h = spacing();
    return dim_ == 2 ? h * h : h * h * h;
  }

  double domain_volume() const { return dim_ == 2 ? two_pi * two_pi : two_pi * two_pi * two_pi; }

  /// Signed frequency of FFT slot i, in [-n/2, n/2).
  int wavenumber(int i) const { return i < n_ / 2 ? i : i - n_; }

  /// FFT slot of a signed frequency.
  int slot(int k) const { return ((k % n_) + n_) % n_; }

  Index3 unravel(std::size_t idx) const {
    Index3 out{0, 0, 0};
    for (int d = dim_ - 1; d >= 0; --d) {
      out[d] = static_cast<int>(idx % n_);
      idx /= n_;
    }
    return out;
  }

  std::size_t ravel(const Index3& i) const {
    std::size_t idx = 0;
    for (int d = 0; d < dim_; ++d) idx = idx * n_ + static_cast<std::size_t>(i[d]);
    return idx;
  }

  /// Signed wavevector stored at spectral slot idx.
  Index3 wavevector(std::size_t idx) const {
    Index3 s = unravel(idx);
    for (int d = 0; d < dim_; ++d) s[d] = wavenumber(s[d]);
    return s;
  }

  bool operator==(const Grid&) const = default;

 private:
  int dim_;
  int n_;
};

/// Calls fn(idx, xi) for every spectral slot with its signed wavevector.
template <class Fn>
void for_each_mode(const Grid& grid, Fn&& fn) {
  const int n = grid.n();
  std::size_t idx = 0;
  if (grid.dim() == 2) {
    for (int a = 0; a < n; ++a) {
      const int ka = grid.wavenumber(a);
      for (int b = 0; b < n; ++b, ++idx) fn(idx, Index3{ka, grid.wavenumber(b), 0});
    }
  } else {
    for (int a = 0; a < n; ++a) {
      const int ka = grid.wavenumber(a);
      for (int b = 0; b < n; ++b) {
        const int kb = grid.wavenumber(b);
        for (int c = 0; c < n; ++c, ++idx) fn(idx, Index3{ka, kb, grid.wavenumber(c)});
      }
    }
  }
}

/// Calls fn(idx, x) for every grid point with its physical coordinates.
template <class Fn>
void for_each_point(const Grid& grid, Fn&& fn) {
  const int n = grid.n();
  const double h = grid.spacing();
  std::size_t idx = 0;
  if (grid.dim() == 2) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b, ++idx) fn(idx, std::array<double, 3>{a * h, b * h, 0.0});
  } else {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c, ++idx) fn(idx, std::array<double, 3>{a * h, b * h, c * h});
  }
}

}  // namespace blowdiag
