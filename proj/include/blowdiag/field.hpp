#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "blowdiag/grid.hpp"

namespace blowdiag {

using complex = std::complex<double>;

/// Real samples of a scalar, vector or tensor quantity on a Grid.
///
/// Components are stored contiguously, component c occupying
/// values[c * grid.size() .. (c + 1) * grid.size()).
class Field {
 public:
  Field(Grid grid, int components)
      : grid_(grid), components_(components), values_(checked_size(grid, components), 0.0) {}

  Field(Grid grid, int components, std::vector<double> values)
      : grid_(grid), components_(components), values_(std::move(values)) {
    if (values_.size() != checked_size(grid, components)) {
      throw std::invalid_argument("Field: value count does not match grid and components");
    }
  }

  /// Samples fn(x) for a scalar field.
  static Field sample(Grid grid, const std::function<double(const std::array<double, 3>&)>& fn) {
    Field f(grid, 1);
    for_each_point(grid, [&](std::size_t i, const std::array<double, 3>& x) { f.values_[i] = fn(x); });
    return f;
  }

  const Grid& grid() const { return grid_; }
  int components() const { return components_; }
  std::size_t points() const { return grid_.size(); }
  bool is_scalar() const { return components_ == 1; }
  bool is_vector() const { return components_ == grid_.dim(); }

  std::span<double> component(int c) {
    return {values_.data() + static_cast<std::size_t>(c) * points(), points()};
  }
  std::span<const double> component(int c) const {
    return {values_.data() + static_cast<std::size_t>(c) * points(), points()};
  }

  double& operator()(int c, std::size_t i) { return values_[static_cast<std::size_t>(c) * points() + i]; }
  double operator()(int c, std::size_t i) const {
    return values_[static_cast<std::size_t>(c) * points() + i];
  }

  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  bool all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
  }

  void require_finite(const char* where) const {
    if (!all_finite()) throw std::domain_error(std::string(where) + ": field contains non-finite values");
  }

  void require_scalar(const char* where) const {
    if (!is_scalar()) throw std::invalid_argument(std::string(where) + ": expected a scalar field");
  }

  void require_vector(const char* where) const {
    if (!is_vector()) throw std::invalid_argument(std::string(where) + ": expected a vector field");
  }

  /// Mean of one component over the torus.
  double mean(int c = 0) const {
    double s = 0.0;
    for (double v : component(c)) s += v;
    return s / static_cast<double>(points());
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
  }

  Field& operator+=(const Field& o) {
    check_same(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  Field& operator-=(const Field& o) {
    check_same(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  Field& operator*=(double a) {
    for (double& v : values_) v *= a;
    return *this;
  }

  /// this += a * x
  Field& axpy(double a, const Field& x) {
    check_same(x);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += a * x.values_[i];
    return *this;
  }

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(double s, Field a) { return a *= s; }

 private:
  static std::size_t checked_size(const Grid& grid, int components) {
    if (components < 1) throw std::invalid_argument("Field: components must be >= 1");
    return grid.size() * static_cast<std::size_t>(components);
  }

  void check_same(const Field& o) const {
    if (!(o.grid_ == grid_) || o.components_ != components_) {
      throw std::invalid_argument("Field: shape mismatch");
    }
  }

  Grid grid_;
  int components_;
  std::vector<double> values_;
};

/// Fourier coefficients of a Field, normalized so f(x) = Σ_ξ f̂(ξ) e^{iξ·x}.
class Spectrum {
 public:
  Spectrum(Grid grid, int components)
      : grid_(grid), components_(components), coeffs_(grid.size() * static_cast<std::size_t>(components)) {}

  const Grid& grid() const { return grid_; }
  int components() const { return components_; }
  std::size_t modes() const { return grid_.size(); }

  std::span<complex> component(int c) {
    return {coeffs_.data() + static_cast<std::size_t>(c) * modes(), modes()};
  }
  std::span<const complex> component(int c) const {
    return {coeffs_.data() + static_cast<std::size_t>(c) * modes(), modes()};
  }

  complex& operator()(int c, std::size_t i) { return coeffs_[static_cast<std::size_t>(c) * modes() + i]; }
  complex operator()(int c, std::size_t i) const {
    return coeffs_[static_cast<std::size_t>(c) * modes() + i];
  }

  /// Coefficient at a signed wavevector.
  complex at(int c, const Index3& xi) const {
    Index3 s{0, 0, 0};
    for (int d = 0; d < grid_.dim(); ++d) s[d] = grid_.slot(xi[d]);
    return (*this)(c, grid_.ravel(s));
  }

  std::vector<complex>& coeffs() { return coeffs_; }
  const std::vector<complex>& coeffs() const { return coeffs_; }

 private:
  Grid grid_;
  int components_;
  std::vector<complex> coeffs_;
};

}  // namespace blowdiag
