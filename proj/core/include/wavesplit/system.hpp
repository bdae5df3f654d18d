#pragma once

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "wavesplit/grid.hpp"
#include "wavesplit/profile.hpp"

namespace wavesplit {

enum class System { string, hyperbolic, acoustic };

std::string_view to_string(System s);
System system_from_string(std::string_view name);

/// Number of state components carried by each system: 2, 2, 3.
std::size_t component_count(System s);

/// String u_tt = c^2 u_xx in the directed form Pi_t + c Pi_x = 0,
/// Lambda_t - c Lambda_x = 0, state (v, w) with v = c u_x, w = -u_t.
struct StringParams {
  double c = 1.0;
};

/// u_t + b(x) v_x = 0, v_t + c(x) u_x = 0; right waves travel at sqrt(bc).
struct HyperbolicParams {
  CoefficientProfile b;
  CoefficientProfile c;

  double epsilon() const;
  /// f = sqrt(c/b) sampled on the profile grid.
  ScalarField impedance() const;
  /// sqrt(b c) at x.
  double speed(double x) const;
  double max_speed() const;
  HyperbolicParams with_epsilon(double epsilon) const;
};

/// Dimensional inputs of the viscous, heat-conducting gas.
struct PhysicalInputs {
  double mu = 0.0;
  double kappa = 0.0;
  double c_p = 0.0;
  double c_v = 0.0;
  double rho0 = 1.0;
  double c0 = 1.0;
  double lambda_scale = 1.0;
};

/// Linearized dimensionless acoustics, state (v, p, rho).
struct AcousticParams {
  double gamma = 1.4;
  double delta1 = 0.0;
  double delta2 = 0.0;
  /// Free coefficient of the acoustic projectors; not derived (see beta_scan).
  double beta = 0.0;
  std::optional<PhysicalInputs> physical;

  /// delta1 = 4 mu / (3 rho0 c0 lambda), delta2 = kappa/(rho0 c0 lambda) (1/c_v - 1/c_p),
  /// gamma = c_p / c_v.
  static AcousticParams from_physical(const PhysicalInputs& in, double beta);
  void validate() const;
};

using SystemParams = std::variant<StringParams, HyperbolicParams, AcousticParams>;

System system_of(const SystemParams& params);

/// Field bundle of one system on a shared grid.
class StateVector {
 public:
  StateVector(SystemParams params, std::vector<ScalarField> components);

  System system() const { return system_of(params_); }
  const SystemParams& params() const { return params_; }
  const Grid1D& grid() const { return components_.front().grid(); }
  std::size_t size() const { return components_.size(); }
  const ScalarField& operator[](std::size_t i) const { return components_[i]; }
  ScalarField& operator[](std::size_t i) { return components_[i]; }
  const std::vector<ScalarField>& components() const { return components_; }

  const StringParams& string_params() const;
  const HyperbolicParams& hyperbolic_params() const;
  const AcousticParams& acoustic_params() const;

  StateVector& operator+=(const StateVector& rhs);
  StateVector& operator-=(const StateVector& rhs);
  StateVector& operator*=(double s);

 private:
  SystemParams params_;
  std::vector<ScalarField> components_;
};

StateVector operator+(StateVector lhs, const StateVector& rhs);
StateVector operator-(StateVector lhs, const StateVector& rhs);
StateVector operator*(double s, StateVector x);

/// Plain L2 norm over all components: sqrt(sum_k integral u_k^2 dx).
double l2_norm(const StateVector& s);
double max_abs_difference(const StateVector& a, const StateVector& b);

void require_system(const StateVector& s, System expected, std::string_view op);

}  // namespace wavesplit
