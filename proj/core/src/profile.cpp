#include "wavesplit/profile.hpp"

#include <cmath>
#include <string>

#include "wavesplit/error.hpp"

namespace wavesplit {

std::string_view to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::constant: return "constant";
    case ProfileKind::linear_ramp: return "linear_ramp";
    case ProfileKind::gaussian_bump: return "gaussian_bump";
    case ProfileKind::tanh_step: return "tanh_step";
  }
  return "unknown";
}

ProfileKind profile_kind_from_string(std::string_view name) {
  if (name == "constant") return ProfileKind::constant;
  if (name == "linear_ramp") return ProfileKind::linear_ramp;
  if (name == "gaussian_bump") return ProfileKind::gaussian_bump;
  if (name == "tanh_step") return ProfileKind::tanh_step;
  throw PreconditionError("unknown profile kind '" + std::string(name) + "'");
}

CoefficientProfile::CoefficientProfile(const ProfileSpec& spec, const Grid1D& grid)
    : spec_(spec), grid_(grid) {
  if (!(spec_.baseline > 0.0)) throw PreconditionError("profile baseline must be positive");
  if (!(spec_.epsilon >= 0.0)) throw PreconditionError("profile epsilon must be >= 0");
  if (spec_.kind != ProfileKind::constant && !(spec_.width > 0.0)) {
    throw PreconditionError("profile width must be positive");
  }
  double max_slope = 0.0;
  for (std::size_t j = 0; j < grid_.size(); ++j) {
    const double x = grid_.x(j);
    const double v = (*this)(x);
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw PreconditionError("profile " + std::string(to_string(spec_.kind)) +
                              " is not strictly positive at x = " + std::to_string(x));
    }
    max_slope = std::max(max_slope, std::abs(slope(x)));
  }
  const double bound = kSlopeFactor * spec_.epsilon * spec_.baseline;
  if (max_slope > bound * (1.0 + 1e-12)) {
    throw PreconditionError("profile slope " + std::to_string(max_slope) +
                            " exceeds the weak-inhomogeneity bound " + std::to_string(bound));
  }
}

CoefficientProfile CoefficientProfile::constant(double value, const Grid1D& grid) {
  ProfileSpec s;
  s.kind = ProfileKind::constant;
  s.baseline = value;
  return CoefficientProfile(s, grid);
}

double CoefficientProfile::shape(double x) const {
  const double s = (x - spec_.center) / spec_.width;
  switch (spec_.kind) {
    case ProfileKind::constant: return 0.0;
    case ProfileKind::linear_ramp: return s;
    case ProfileKind::gaussian_bump: return std::exp(-0.5 * s * s);
    case ProfileKind::tanh_step: return std::tanh(s);
  }
  return 0.0;
}

double CoefficientProfile::shape_slope(double x) const {
  const double s = (x - spec_.center) / spec_.width;
  switch (spec_.kind) {
    case ProfileKind::constant: return 0.0;
    case ProfileKind::linear_ramp: return 1.0 / spec_.width;
    case ProfileKind::gaussian_bump: return -s * std::exp(-0.5 * s * s) / spec_.width;
    case ProfileKind::tanh_step: {
      const double c = std::cosh(s);
      return 1.0 / (c * c * spec_.width);
    }
  }
  return 0.0;
}

double CoefficientProfile::operator()(double x) const {
  return spec_.baseline * (1.0 + spec_.epsilon * spec_.amplitude * shape(x));
}

double CoefficientProfile::slope(double x) const {
  return spec_.baseline * spec_.epsilon * spec_.amplitude * shape_slope(x);
}

ScalarField CoefficientProfile::sample() const {
  return ScalarField::sample(grid_, [this](double x) { return (*this)(x); });
}

CoefficientProfile CoefficientProfile::with_epsilon(double epsilon) const {
  ProfileSpec s = spec_;
  s.epsilon = epsilon;
  return CoefficientProfile(s, grid_);
}

}  // namespace wavesplit
