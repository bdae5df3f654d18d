#pragma once

#include <string>
#include <string_view>

#include "wavesplit/grid.hpp"

namespace wavesplit {

enum class ProfileKind { constant, linear_ramp, gaussian_bump, tanh_step };

std::string_view to_string(ProfileKind kind);
/// Throws PreconditionError for unknown names.
ProfileKind profile_kind_from_string(std::string_view name);

struct ProfileSpec {
  ProfileKind kind = ProfileKind::constant;
  double baseline = 1.0;
  double amplitude = 0.0;
  double center = 0.0;
  double width = 1.0;
  /// Inhomogeneity scale.
  double epsilon = 0.0;
};

/// Coefficient b(x) or c(x) of the inhomogeneous system:
///
///   constant:      baseline
///   linear_ramp:   baseline * (1 + epsilon * amplitude * (x - center) / width)
///   gaussian_bump: baseline * (1 + epsilon * amplitude * exp(-(x - center)^2 / (2 width^2)))
///   tanh_step:     baseline * (1 + epsilon * amplitude * tanh((x - center) / width))
///
/// Construction verifies on the grid that the profile is strictly positive and
/// that max|p'| <= kSlopeFactor * epsilon * baseline.
class CoefficientProfile {
 public:
  static constexpr double kSlopeFactor = 4.0;

  CoefficientProfile(const ProfileSpec& spec, const Grid1D& grid);
  static CoefficientProfile constant(double value, const Grid1D& grid);

  double operator()(double x) const;
  double slope(double x) const;
  ScalarField sample() const;

  const ProfileSpec& spec() const { return spec_; }
  const Grid1D& grid() const { return grid_; }
  double epsilon() const { return spec_.epsilon; }
  /// Same shape with a different inhomogeneity scale (revalidated).
  CoefficientProfile with_epsilon(double epsilon) const;

 private:
  double shape(double x) const;
  double shape_slope(double x) const;

  ProfileSpec spec_;
  Grid1D grid_;
};

}  // namespace wavesplit
