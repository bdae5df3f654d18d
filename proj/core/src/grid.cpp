#include "wavesplit/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wavesplit/error.hpp"

namespace wavesplit {

Grid1D Grid1D::make(double length, int points) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw PreconditionError("grid length must be positive, got " + std::to_string(length));
  }
  if (points < 8 || points % 2 != 0) {
    throw PreconditionError("grid points must be even and >= 8, got " + std::to_string(points));
  }
  return Grid1D(length, points);
}

std::vector<double> Grid1D::coordinates() const {
  std::vector<double> xs(size());
  for (std::size_t j = 0; j < xs.size(); ++j) xs[j] = x(j);
  return xs;
}

ScalarField::ScalarField(const Grid1D& grid) : grid_(grid), values_(grid.size(), 0.0) {}

ScalarField::ScalarField(const Grid1D& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw PreconditionError("field has " + std::to_string(values_.size()) +
                            " samples, grid has " + std::to_string(grid_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw PreconditionError("field contains non-finite values");
  }
}

ScalarField ScalarField::constant(const Grid1D& grid, double value) {
  return ScalarField(grid, std::vector<double>(grid.size(), value));
}

double ScalarField::mean() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s / static_cast<double>(values_.size());
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double ScalarField::integral() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s * grid_.spacing();
}

double ScalarField::l2_norm() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return std::sqrt(s * grid_.spacing());
}

namespace {
void require_same_grid(const ScalarField& a, const ScalarField& b) {
  if (!(a.grid() == b.grid())) throw PreconditionError("fields live on different grids");
}
}  // namespace

ScalarField& ScalarField::operator+=(const ScalarField& rhs) {
  require_same_grid(*this, rhs);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += rhs.values_[j];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& rhs) {
  require_same_grid(*this, rhs);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= rhs.values_[j];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

ScalarField& ScalarField::operator+=(double s) {
  for (double& v : values_) v += s;
  return *this;
}

ScalarField operator+(ScalarField lhs, const ScalarField& rhs) { return lhs += rhs; }
ScalarField operator-(ScalarField lhs, const ScalarField& rhs) { return lhs -= rhs; }
ScalarField operator-(ScalarField f) { return f *= -1.0; }
ScalarField operator*(ScalarField f, double s) { return f *= s; }
ScalarField operator*(double s, ScalarField f) { return f *= s; }

ScalarField operator*(ScalarField lhs, const ScalarField& rhs) {
  require_same_grid(lhs, rhs);
  for (std::size_t j = 0; j < lhs.size(); ++j) lhs[j] *= rhs[j];
  return lhs;
}

ScalarField operator/(ScalarField lhs, const ScalarField& rhs) {
  require_same_grid(lhs, rhs);
  for (std::size_t j = 0; j < lhs.size(); ++j) lhs[j] /= rhs[j];
  return lhs;
}

double max_abs_difference(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b);
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

ScalarField gaussian_pulse(const Grid1D& grid, double center, double width, double amplitude) {
  if (!(width >= 4.0 * grid.spacing())) {
    throw PreconditionError("pulse width " + std::to_string(width) +
                            " is under-resolved (needs >= 4 grid spacings = " +
                            std::to_string(4.0 * grid.spacing()) + ")");
  }
  const auto g = [&](double x) {
    const double s = (x - center) / width;
    return amplitude * std::exp(-0.5 * s * s);
  };
  const double edge = std::max(std::abs(g(grid.left())), std::abs(g(-grid.left())));
  if (edge > 1e-12 * std::abs(amplitude)) {
    throw PreconditionError("pulse centered at " + std::to_string(center) + " with width " +
                            std::to_string(width) + " touches the domain boundary");
  }
  return ScalarField::sample(grid, g);
}

Support significant_support(const ScalarField& f, double rel_tol) {
  const double level = rel_tol * f.max_abs();
  Support s;
  if (f.max_abs() == 0.0) return s;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (std::abs(f[j]) > level) {
      const double x = f.grid().x(j);
      if (s.empty) {
        s.lo = s.hi = x;
        s.empty = false;
      } else {
        s.lo = std::min(s.lo, x);
        s.hi = std::max(s.hi, x);
      }
    }
  }
  return s;
}

double interpolate_cubic(const ScalarField& f, double x) {
  const Grid1D& g = f.grid();
  const double right = g.left() + g.length();
  if (x < g.left() || x >= right) {
    throw PreconditionError("interpolation point " + std::to_string(x) + " outside [" +
                            std::to_string(g.left()) + ", " + std::to_string(right) + ")");
  }
  const double s = (x - g.left()) / g.spacing();
  const auto n = static_cast<long>(g.size());
  long j = static_cast<long>(std::floor(s));
  const double u = s - static_cast<double>(j);
  if (u == 0.0) return f[static_cast<std::size_t>(((j % n) + n) % n)];
  const auto at = [&](long k) { return f[static_cast<std::size_t>(((k % n) + n) % n)]; };
  // Lagrange weights on nodes -1, 0, 1, 2 relative to j.
  const double wm1 = -u * (u - 1.0) * (u - 2.0) / 6.0;
  const double w0 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
  const double w1 = -(u + 1.0) * u * (u - 2.0) / 2.0;
  const double w2 = (u + 1.0) * u * (u - 1.0) / 6.0;
  return wm1 * at(j - 1) + w0 * at(j) + w1 * at(j + 1) + w2 * at(j + 2);
}

}  // namespace wavesplit
