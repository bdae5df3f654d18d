#include "wavesplit/propagate.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <string>

#include "wavesplit/error.hpp"
#include "wavesplit/projectors.hpp"
#include "wavesplit/pseudodiff.hpp"
#include "wavesplit/spectral.hpp"

namespace wavesplit {

namespace {

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw PreconditionError("evolution time must be >= 0, got " + std::to_string(t));
  }
}

// A directed amplitude moving by `excursion` (signed) must stay inside the
// domain. Significance is judged against `scale`, the largest amplitude in the
// state, so round-off residue of an absent mode (and the uniform floor left by
// an M, M^-1 round trip, ~1e-12) is ignored.
constexpr double kSignificance = 1e-10;

void require_inside(const ScalarField& amp, double scale, double excursion, std::string_view what) {
  const double peak = amp.max_abs();
  if (peak <= kSignificance * scale) return;
  const Support s = significant_support(amp, kSignificance * scale / peak);
  if (s.empty) return;
  const Grid1D& g = amp.grid();
  const double lo = s.lo + std::min(excursion, 0.0);
  const double hi = s.hi + std::max(excursion, 0.0);
  if (lo <= g.left() || hi >= g.left() + g.length()) {
    throw WrapAroundError(std::string(what) + " wave reaches the domain boundary (support [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "])");
  }
}

}  // namespace

StateVector solve_string(const StateVector& initial, double t) {
  require_system(initial, System::string, "solve_string");
  require_time(t);
  if (t == 0.0) return initial;
  const double c = initial.string_params().c;
  ModeDecomposition d = mode_decompose(initial);
  const double scale = std::max(d.pi.max_abs(), d.lambda.max_abs());
  require_inside(d.pi, scale, c * t, "right");
  require_inside(d.lambda, scale, -c * t, "left");
  d.pi = translate(d.pi, c * t);
  d.lambda = translate(d.lambda, -c * t);
  return mode_compose(d);
}

namespace {

// Feet of the backward characteristics dx/dtau = +-sqrt(bc) through every
// grid point. The flow is autonomous, so a later time continues from the
// current feet instead of restarting at the grid.
class CharacteristicFeet {
 public:
  CharacteristicFeet(const HyperbolicParams& p, const Grid1D& g)
      : p_(p), grid_(g), right_(g.coordinates()), left_(right_),
        max_step_(0.1 * g.spacing() / p.max_speed()) {}

  void advance_to(double t) {
    const double span = t - time_;
    if (span <= 0.0) return;
    const int steps = std::max(1, static_cast<int>(std::ceil(span / max_step_)));
    const double h = span / steps;
    for (auto& y : right_) y = rk4(y, h, steps, +1.0);
    for (auto& y : left_) y = rk4(y, h, steps, -1.0);
    time_ = t;
  }

  // Amplitude transported from the initial field; outside the domain lies the
  // quiescent infinite line.
  ScalarField carry(const ScalarField& amp, bool right) const {
    const auto& feet = right ? right_ : left_;
    const double hi = grid_.left() + grid_.length();
    ScalarField out(grid_);
    for (std::size_t j = 0; j < feet.size(); ++j) {
      const double f = feet[j];
      out[j] = (f >= grid_.left() && f < hi) ? interpolate_cubic(amp, f) : 0.0;
    }
    return out;
  }

 private:
  double rk4(double y, double h, int steps, double sign) const {
    const auto v = [&](double x) { return -sign * p_.speed(x); };
    for (int n = 0; n < steps; ++n) {
      const double k1 = v(y);
      const double k2 = v(y + 0.5 * h * k1);
      const double k3 = v(y + 0.5 * h * k2);
      const double k4 = v(y + h * k3);
      y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return y;
  }

  const HyperbolicParams& p_;
  Grid1D grid_;
  std::vector<double> right_, left_;
  double max_step_;
  double time_ = 0.0;
};

struct HyperbolicStart {
  ModeDecomposition modes;
  double scale;
};

HyperbolicStart hyperbolic_start(const StateVector& initial, double t_max) {
  require_system(initial, System::hyperbolic, "solve_hyperbolic");
  require_time(t_max);
  const double vmax = initial.hyperbolic_params().max_speed();
  ModeDecomposition d = mode_decompose(initial);
  const double scale = std::max(d.pi.max_abs(), d.lambda.max_abs());
  require_inside(d.pi, scale, vmax * t_max, "right");
  require_inside(d.lambda, scale, -vmax * t_max, "left");
  return {std::move(d), scale};
}

StateVector hyperbolic_state(const HyperbolicStart& s, const CharacteristicFeet& feet) {
  ModeDecomposition d = s.modes;
  d.pi = feet.carry(s.modes.pi, true);
  d.lambda = feet.carry(s.modes.lambda, false);
  return mode_compose(d);
}

}  // namespace

StateVector solve_hyperbolic(const StateVector& initial, double t) {
  const HyperbolicStart start = hyperbolic_start(initial, t);
  if (t == 0.0) return initial;
  CharacteristicFeet feet(initial.hyperbolic_params(), initial.grid());
  feet.advance_to(t);
  return hyperbolic_state(start, feet);
}

std::vector<StateVector> solve_sequence(const StateVector& initial,
                                        const std::vector<double>& times) {
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (times[i] < times[i - 1]) throw PreconditionError("solve times must not decrease");
  }
  std::vector<StateVector> out;
  out.reserve(times.size());
  if (times.empty()) return out;
  if (initial.system() != System::hyperbolic) {
    for (double t : times) out.push_back(solve(initial, t));
    return out;
  }
  require_time(times.front());
  const HyperbolicStart start = hyperbolic_start(initial, times.back());
  CharacteristicFeet feet(initial.hyperbolic_params(), initial.grid());
  for (double t : times) {
    if (t == 0.0) {
      out.push_back(initial);
      continue;
    }
    feet.advance_to(t);
    out.push_back(hyperbolic_state(start, feet));
  }
  return out;
}

StateVector solve_acoustic(const StateVector& initial, double t) {
  require_system(initial, System::acoustic, "solve_acoustic");
  require_time(t);
  if (t == 0.0) return initial;
  const OperatorMatrix3 op = acoustic_evolution_operator(initial.acoustic_params());
  const Grid1D& grid = initial.grid();
  const auto k = wavenumbers(grid);
  std::array<std::vector<std::complex<double>>, 3> c;
  for (int j = 0; j < 3; ++j) c[j] = forward_transform(initial[j]);
  for (std::size_t m = 0; m < k.size(); ++m) {
    const double km = (m + 1 == k.size()) ? 0.0 : k[m];
    const auto sym = op.symbol(km);
    Eigen::Matrix3cd a;
    for (int r = 0; r < 3; ++r)
      for (int s = 0; s < 3; ++s) a(r, s) = -sym[r][s] * t;
    const Eigen::Matrix3cd e = a.exp();
    const Eigen::Vector3cd x(c[0][m], c[1][m], c[2][m]);
    const Eigen::Vector3cd y = e * x;
    for (int j = 0; j < 3; ++j) c[j][m] = y(j);
  }
  std::vector<ScalarField> out;
  for (int j = 0; j < 3; ++j) out.push_back(inverse_transform(grid, std::move(c[j])));
  return StateVector(initial.params(), std::move(out));
}

StateVector solve(const StateVector& initial, double t) {
  switch (initial.system()) {
    case System::string: return solve_string(initial, t);
    case System::hyperbolic: return solve_hyperbolic(initial, t);
    case System::acoustic: return solve_acoustic(initial, t);
  }
  throw PreconditionError("unknown system");
}

EnergyParts acoustic_energy(const StateVector& s) {
  require_system(s, System::acoustic, "acoustic_energy");
  const ScalarField ea = 0.5 * (s[0] * s[0] + s[1] * s[1]);
  const ScalarField diff = s[2] - s[1];
  const ScalarField es = 0.5 * (diff * diff);
  return {ea.integral(), es.integral()};
}

double conserved_norm(const StateVector& s) {
  switch (s.system()) {
    case System::string: {
      const ModeDecomposition d = mode_decompose(s);
      return (d.pi * d.pi + d.lambda * d.lambda).integral();
    }
    case System::hyperbolic: {
      const auto& p = s.hyperbolic_params();
      return (s[0] * s[0] / p.b.sample() + s[1] * s[1] / p.c.sample()).integral();
    }
    case System::acoustic: {
      const EnergyParts e = acoustic_energy(s);
      return e.acoustic + e.entropy;
    }
  }
  throw PreconditionError("unknown system");
}

EvolutionResult evolve(const StateVector& initial, const std::vector<double>& times) {
  if (times.empty()) throw PreconditionError("evolve needs at least one time");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw PreconditionError("evolution times must increase");
  }
  EvolutionResult r;
  r.times = times;
  r.states = solve_sequence(initial, times);
  r.norms = track_norm(r);
  if (initial.system() == System::acoustic) {
    std::vector<EnergyParts> parts;
    for (const auto& s : r.states) parts.push_back(acoustic_energy(s));
    r.energy_parts = std::move(parts);
  }
  return r;
}

std::vector<double> track_norm(const EvolutionResult& result) {
  std::vector<double> n;
  n.reserve(result.states.size());
  for (const auto& s : result.states) n.push_back(conserved_norm(s));
  return n;
}

BalanceResidual entropy_balance_residual(const EvolutionResult& result) {
  if (result.states.size() < 3) {
    throw PreconditionError("entropy balance needs at least 3 stored frames");
  }
  require_system(result.states.front(), System::acoustic, "entropy_balance_residual");
  const auto entropy_density = [](const StateVector& s) {
    const ScalarField d = s[2] - s[1];
    return 0.5 * (d * d);
  };
  BalanceResidual out;
  for (std::size_t j = 1; j + 1 < result.states.size(); ++j) {
    const double span = result.times[j + 1] - result.times[j - 1];
    const ScalarField dedt =
        (1.0 / span) * (entropy_density(result.states[j + 1]) - entropy_density(result.states[j - 1]));
    const StateVector& s = result.states[j];
    const ScalarField flux = derivative(s[1] * s[0]);
    out.times.push_back(result.times[j]);
    out.values.push_back((dedt + flux).max_abs());
  }
  return out;
}

}  // namespace wavesplit
