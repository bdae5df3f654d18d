#pragma once

#include <optional>
#include <vector>

#include "wavesplit/diff_operator.hpp"
#include "wavesplit/system.hpp"

namespace wavesplit {

enum class Direction { right, left };
enum class Mode { right, left, entropy };

std::string_view to_string(Mode m);
Mode mode_from_string(std::string_view name);
inline Mode to_mode(Direction d) { return d == Direction::right ? Mode::right : Mode::left; }

/// P_{+-} = 1/2 [[1, +-1], [+-1, 1]] applied pointwise; right gives (Pi, Pi),
/// left gives (Lambda, -Lambda).
StateVector string_project(const StateVector& state, Direction direction);

/// P_{1,2} = 1/2 [[1, +-M^-1], [+-M, 1]] with M = D^-1 f D, f = sqrt(c/b).
StateVector hyperbolic_project(const StateVector& state, Direction direction);

/// Acoustic right/left projectors (first order in the dissipation, with the
/// free coefficient beta) and the entropy-mode projector.
OperatorMatrix3 acoustic_projector(const AcousticParams& params, Mode mode);

/// Evolution operator L of psi_t + L psi = 0 for the acoustic state.
OperatorMatrix3 acoustic_evolution_operator(const AcousticParams& params);

StateVector acoustic_project(const StateVector& state, Mode mode);

/// Dispatches on the state's system. Entropy is valid only for acoustics.
StateVector project(const StateVector& state, Mode mode);

/// Directed-mode amplitudes of a state.
struct ModeDecomposition {
  ScalarField pi;
  ScalarField lambda;
  std::optional<ScalarField> entropy;
  SystemParams params;
  /// Acoustic only: the three projected states P1 psi, P2 psi, P3 psi. They
  /// sum to psi exactly, which makes recomposition lossless.
  std::vector<StateVector> parts;

  System system() const { return system_of(params); }
};

ModeDecomposition mode_decompose(const StateVector& state);

/// string: (Pi + Lambda, Pi - Lambda); hyperbolic: (Pi + Lambda, M(Pi - Lambda));
/// acoustic: sum of the stored projected states, or the zeroth-order
/// eigenvectors Pi (1,1,1) + Lambda (1,-1,-1) + s (0,0,1) when none are stored.
StateVector mode_compose(const ModeDecomposition& d);

/// State consisting of one directed mode with the given scalar amplitude.
/// Acoustic modes are built by projecting the zeroth-order eigenvector.
StateVector pure_mode_state(const SystemParams& params, Mode mode, const ScalarField& amplitude);

/// ((P1 L - L P1) g) for the hyperbolic evolution operator L = [[0, bD], [cD, 0]].
StateVector hyperbolic_commutator(const HyperbolicParams& params, const StateVector& probe);

/// Probe states used for the operator-norm estimates: 10 localized pulse
/// pairs of varied centers and widths.
std::vector<StateVector> probe_states(const SystemParams& params, const Grid1D& grid);

/// max over the probe set of ||[P1, L] g|| / ||g||.
double commutator_norm(const HyperbolicParams& params);

/// max over the probe set and modes of ||P(P g) - P g|| / ||g||.
double idempotency_residual(const SystemParams& params, const Grid1D& grid);

/// max over the probe set of ||(P1 + P2 [+ P3]) g - g|| / ||g||.
double completeness_residual(const SystemParams& params, const Grid1D& grid);

/// Acoustic: max over probes of ||P1 L g - L P1 g|| / ||g||.
double acoustic_commutator_residual(const AcousticParams& params, const Grid1D& grid);

struct BetaScanRow {
  double beta = 0.0;
  double idempotency = 0.0;
  double commutator = 0.0;
};

/// Projector residuals as a function of beta, other parameters fixed.
std::vector<BetaScanRow> beta_scan(const AcousticParams& base, const Grid1D& grid,
                                   const std::vector<double>& betas);

}  // namespace wavesplit
