#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wavesplit {

/// Uniform periodic grid on [-length/2, length/2).
class Grid1D {
 public:
  /// Throws PreconditionError unless length > 0, points even and >= 8.
  static Grid1D make(double length, int points);

  double length() const { return length_; }
  int points() const { return points_; }
  std::size_t size() const { return static_cast<std::size_t>(points_); }
  double spacing() const { return spacing_; }
  bool periodic() const { return true; }

  double left() const { return -0.5 * length_; }
  double x(std::size_t j) const { return left() + static_cast<double>(j) * spacing_; }
  std::vector<double> coordinates() const;

  bool operator==(const Grid1D& other) const {
    return length_ == other.length_ && points_ == other.points_;
  }

 private:
  Grid1D(double length, int points)
      : length_(length), points_(points), spacing_(length / points) {}

  double length_;
  int points_;
  double spacing_;
};

inline Grid1D make_grid(double length, int points) { return Grid1D::make(length, points); }

/// Real samples of one field component on a grid.
class ScalarField {
 public:
  explicit ScalarField(const Grid1D& grid);
  ScalarField(const Grid1D& grid, std::vector<double> values);

  /// Samples fn(x_j) at every grid point.
  template <class Fn>
  static ScalarField sample(const Grid1D& grid, Fn&& fn) {
    std::vector<double> v(grid.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = fn(grid.x(j));
    return ScalarField(grid, std::move(v));
  }

  static ScalarField constant(const Grid1D& grid, double value);

  const Grid1D& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator[](std::size_t j) const { return values_[j]; }
  double& operator[](std::size_t j) { return values_[j]; }

  double mean() const;
  double max_abs() const;
  /// Riemann/trapezoid quadrature on the periodic grid.
  double integral() const;
  /// sqrt(integral of f^2).
  double l2_norm() const;

  ScalarField& operator+=(const ScalarField& rhs);
  ScalarField& operator-=(const ScalarField& rhs);
  ScalarField& operator*=(double s);
  ScalarField& operator+=(double s);

 private:
  Grid1D grid_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField lhs, const ScalarField& rhs);
ScalarField operator-(ScalarField lhs, const ScalarField& rhs);
ScalarField operator-(ScalarField f);
ScalarField operator*(ScalarField f, double s);
ScalarField operator*(double s, ScalarField f);
/// Pointwise product.
ScalarField operator*(ScalarField lhs, const ScalarField& rhs);
/// Pointwise quotient.
ScalarField operator/(ScalarField lhs, const ScalarField& rhs);

double max_abs_difference(const ScalarField& a, const ScalarField& b);

/// amplitude * exp(-(x-center)^2 / (2 width^2)) sampled on the grid.
/// Rejects width < 4 spacings and pulses whose value at the domain edge
/// exceeds 1e-12 * |amplitude|.
ScalarField gaussian_pulse(const Grid1D& grid, double center, double width, double amplitude);

/// Extent [lo, hi] of the region where |f| > rel_tol * max|f|; empty field
/// returns {0, 0}.
struct Support {
  double lo = 0.0;
  double hi = 0.0;
  bool empty = true;
};
Support significant_support(const ScalarField& f, double rel_tol = 1e-12);

/// Four-point (cubic Lagrange) interpolation of a periodic field at x.
/// Points outside [left, left + length) are rejected.
double interpolate_cubic(const ScalarField& f, double x);

}  // namespace wavesplit
