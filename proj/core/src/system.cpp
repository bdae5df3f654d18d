#include "wavesplit/system.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wavesplit/error.hpp"

namespace wavesplit {

std::string_view to_string(System s) {
  switch (s) {
    case System::string: return "string";
    case System::hyperbolic: return "hyperbolic";
    case System::acoustic: return "acoustic";
  }
  return "unknown";
}

System system_from_string(std::string_view name) {
  if (name == "string") return System::string;
  if (name == "hyperbolic") return System::hyperbolic;
  if (name == "acoustic") return System::acoustic;
  throw PreconditionError("unknown system '" + std::string(name) + "'");
}

std::size_t component_count(System s) { return s == System::acoustic ? 3 : 2; }

double HyperbolicParams::epsilon() const { return std::max(b.epsilon(), c.epsilon()); }

ScalarField HyperbolicParams::impedance() const {
  ScalarField f = c.sample() / b.sample();
  for (double& v : f.values()) v = std::sqrt(v);
  return f;
}

double HyperbolicParams::speed(double x) const { return std::sqrt(b(x) * c(x)); }

double HyperbolicParams::max_speed() const {
  double m = 0.0;
  const Grid1D& g = b.grid();
  for (std::size_t j = 0; j < g.size(); ++j) m = std::max(m, speed(g.x(j)));
  return m;
}

HyperbolicParams HyperbolicParams::with_epsilon(double epsilon) const {
  return {b.with_epsilon(epsilon), c.with_epsilon(epsilon)};
}

AcousticParams AcousticParams::from_physical(const PhysicalInputs& in, double beta) {
  if (!(in.c_v > 0.0) || !(in.c_p > in.c_v)) {
    throw PreconditionError("physical inputs need c_p > c_v > 0");
  }
  if (!(in.rho0 > 0.0) || !(in.c0 > 0.0) || !(in.lambda_scale > 0.0)) {
    throw PreconditionError("physical inputs need positive rho0, c0 and lambda_scale");
  }
  if (in.mu < 0.0 || in.kappa < 0.0) {
    throw PreconditionError("viscosity and conductivity must be non-negative");
  }
  AcousticParams p;
  const double scale = in.rho0 * in.c0 * in.lambda_scale;
  p.delta1 = 4.0 * in.mu / (3.0 * scale);
  p.delta2 = in.kappa / scale * (1.0 / in.c_v - 1.0 / in.c_p);
  p.gamma = in.c_p / in.c_v;
  p.beta = beta;
  p.physical = in;
  return p;
}

void AcousticParams::validate() const {
  if (!(gamma > 1.0)) throw PreconditionError("acoustic gamma must exceed 1");
  if (delta1 < 0.0 || delta2 < 0.0) throw PreconditionError("delta1, delta2 must be >= 0");
  if (!std::isfinite(beta)) throw PreconditionError("beta must be finite");
}

System system_of(const SystemParams& params) {
  switch (params.index()) {
    case 0: return System::string;
    case 1: return System::hyperbolic;
    default: return System::acoustic;
  }
}

StateVector::StateVector(SystemParams params, std::vector<ScalarField> components)
    : params_(std::move(params)), components_(std::move(components)) {
  const std::size_t expected = component_count(system());
  if (components_.size() != expected) {
    throw PreconditionError(std::string(to_string(system())) + " state needs " +
                            std::to_string(expected) + " components, got " +
                            std::to_string(components_.size()));
  }
  for (const auto& c : components_) {
    if (!(c.grid() == components_.front().grid())) {
      throw PreconditionError("state components must share one grid");
    }
  }
  if (const auto* s = std::get_if<StringParams>(&params_); s && !(s->c > 0.0)) {
    throw PreconditionError("string speed c must be positive");
  }
  if (const auto* h = std::get_if<HyperbolicParams>(&params_);
      h && !(h->b.grid() == grid() && h->c.grid() == grid())) {
    throw PreconditionError("coefficient profiles live on a different grid than the state");
  }
  if (const auto* a = std::get_if<AcousticParams>(&params_)) a->validate();
}

const StringParams& StateVector::string_params() const {
  require_system(*this, System::string, "string_params");
  return std::get<StringParams>(params_);
}

const HyperbolicParams& StateVector::hyperbolic_params() const {
  require_system(*this, System::hyperbolic, "hyperbolic_params");
  return std::get<HyperbolicParams>(params_);
}

const AcousticParams& StateVector::acoustic_params() const {
  require_system(*this, System::acoustic, "acoustic_params");
  return std::get<AcousticParams>(params_);
}

StateVector& StateVector::operator+=(const StateVector& rhs) {
  if (rhs.size() != size()) throw SystemMismatchError("adding states of different systems");
  for (std::size_t i = 0; i < size(); ++i) components_[i] += rhs.components_[i];
  return *this;
}

StateVector& StateVector::operator-=(const StateVector& rhs) {
  if (rhs.size() != size()) throw SystemMismatchError("subtracting states of different systems");
  for (std::size_t i = 0; i < size(); ++i) components_[i] -= rhs.components_[i];
  return *this;
}

StateVector& StateVector::operator*=(double s) {
  for (auto& c : components_) c *= s;
  return *this;
}

StateVector operator+(StateVector lhs, const StateVector& rhs) { return lhs += rhs; }
StateVector operator-(StateVector lhs, const StateVector& rhs) { return lhs -= rhs; }
StateVector operator*(double s, StateVector x) { return x *= s; }

double l2_norm(const StateVector& s) {
  double sum = 0.0;
  for (const auto& c : s.components()) {
    const double n = c.l2_norm();
    sum += n * n;
  }
  return std::sqrt(sum);
}

double max_abs_difference(const StateVector& a, const StateVector& b) {
  if (a.size() != b.size()) throw SystemMismatchError("comparing states of different systems");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, max_abs_difference(a[i], b[i]));
  return m;
}

void require_system(const StateVector& s, System expected, std::string_view op) {
  if (s.system() != expected) {
    throw SystemMismatchError(std::string(op) + " expects a " + std::string(to_string(expected)) +
                              " state, got " + std::string(to_string(s.system())));
  }
}

}  // namespace wavesplit
