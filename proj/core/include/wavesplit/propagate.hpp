#pragma once

#include <optional>
#include <vector>

#include "wavesplit/system.hpp"

namespace wavesplit {

/// Exact d'Alembert evolution: Pi shifted by +c t, Lambda by -c t.
/// Throws WrapAroundError if a pulse would leave the domain.
StateVector solve_string(const StateVector& initial, double t);

/// Backward characteristics dx/dtau = -+ sqrt(b c), classical RK4 with
/// h = t / ceil(t / (0.1 spacing / max_speed)), cubic interpolation of the
/// initial mode amplitudes at the characteristic feet.
StateVector solve_hyperbolic(const StateVector& initial, double t);

/// Per-wavenumber matrix exponential exp(-L(k) t) of the acoustic symbol.
StateVector solve_acoustic(const StateVector& initial, double t);

/// Dispatches on the system.
StateVector solve(const StateVector& initial, double t);

/// Solutions at each of the non-decreasing times. Characteristics are
/// continued from one time to the next rather than retraced from t = 0.
std::vector<StateVector> solve_sequence(const StateVector& initial,
                                        const std::vector<double>& times);

/// E_a = (v^2 + p^2)/2 and E_s = (rho - p)^2/2 integrated over x.
struct EnergyParts {
  double acoustic = 0.0;
  double entropy = 0.0;
};

struct EvolutionResult {
  std::vector<double> times;
  std::vector<StateVector> states;
  std::vector<double> norms;
  std::optional<std::vector<EnergyParts>> energy_parts;
};

/// Solves from `initial` (taken at t = 0) to each of the strictly increasing
/// times and records the conserved norm of every frame.
EvolutionResult evolve(const StateVector& initial, const std::vector<double>& times);

/// string: integral (Lambda^2 + Pi^2); hyperbolic: integral (u^2/b + v^2/c);
/// acoustic: integral (E_a + E_s).
double conserved_norm(const StateVector& state);
EnergyParts acoustic_energy(const StateVector& state);

std::vector<double> track_norm(const EvolutionResult& result);

struct BalanceResidual {
  std::vector<double> times;
  std::vector<double> values;
};

/// max_x |d E_s/dt + d(p v)/dx| at the interior frames, with the time
/// derivative by centered differences over the stored frames.
BalanceResidual entropy_balance_residual(const EvolutionResult& result);

}  // namespace wavesplit
