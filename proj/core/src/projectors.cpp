#include "wavesplit/projectors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wavesplit/error.hpp"
#include "wavesplit/pseudodiff.hpp"
#include "wavesplit/spectral.hpp"

namespace wavesplit {

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::right: return "right";
    case Mode::left: return "left";
    case Mode::entropy: return "entropy";
  }
  return "unknown";
}

Mode mode_from_string(std::string_view name) {
  if (name == "right") return Mode::right;
  if (name == "left") return Mode::left;
  if (name == "entropy") return Mode::entropy;
  throw PreconditionError("unknown mode '" + std::string(name) + "'");
}

StateVector string_project(const StateVector& state, Direction direction) {
  require_system(state, System::string, "string_project");
  const double sg = direction == Direction::right ? 1.0 : -1.0;
  ScalarField amp = 0.5 * (state[0] + sg * state[1]);
  ScalarField second = sg * amp;
  return StateVector(state.params(), {std::move(amp), std::move(second)});
}

StateVector hyperbolic_project(const StateVector& state, Direction direction) {
  require_system(state, System::hyperbolic, "hyperbolic_project");
  const ScalarField f = state.hyperbolic_params().impedance();
  const double sg = direction == Direction::right ? 1.0 : -1.0;
  ScalarField first = 0.5 * (state[0] + sg * apply_M_inv(f, state[1]));
  ScalarField second = 0.5 * (sg * apply_M(f, state[0]) + state[1]);
  return StateVector(state.params(), {std::move(first), std::move(second)});
}

OperatorMatrix3 acoustic_projector(const AcousticParams& p, Mode mode) {
  p.validate();
  const double g1 = p.gamma - 1.0;
  const double a = p.delta2 / (2.0 * g1);
  OperatorMatrix3 m;
  if (mode == Mode::entropy) {
    m(0, 1) = {{0.0, 2.0 * a, 0.0}};
    m(0, 2) = {{0.0, -2.0 * a, 0.0}};
    m(2, 0) = {{0.0, -p.delta2, 0.0}};
    m(2, 1) = {{-1.0, 0.0, 0.0}};
    m(2, 2) = {{1.0, 0.0, 0.0}};
    return m;
  }
  const double sg = mode == Mode::right ? 1.0 : -1.0;
  m(0, 0) = {{0.5, sg * (0.5 * p.delta2 - 0.25 * p.beta), 0.0}};
  m(0, 1) = {{0.5 * sg, -a, 0.0}};
  m(0, 2) = {{0.0, a, 0.0}};
  m(1, 0) = {{0.5 * sg, 0.0, 0.0}};
  m(1, 1) = {{0.5, sg * (0.25 * p.beta - p.gamma * a), 0.0}};
  m(1, 2) = {{0.0, sg * a, 0.0}};
  m(2, 0) = {{0.5 * sg, 0.5 * p.delta2, 0.0}};
  m(2, 1) = {{0.5, sg * (0.25 * p.beta - a), 0.0}};
  m(2, 2) = {{0.0, sg * a, 0.0}};
  return m;
}

OperatorMatrix3 acoustic_evolution_operator(const AcousticParams& p) {
  p.validate();
  const double g1 = p.gamma - 1.0;
  OperatorMatrix3 m;
  m(0, 0) = {{0.0, 0.0, -p.delta1}};
  m(0, 1) = {{0.0, 1.0, 0.0}};
  m(1, 0) = {{0.0, 1.0, 0.0}};
  m(1, 1) = {{0.0, 0.0, -p.gamma * p.delta2 / g1}};
  m(1, 2) = {{0.0, 0.0, p.delta2 / g1}};
  m(2, 0) = {{0.0, 1.0, 0.0}};
  return m;
}

StateVector acoustic_project(const StateVector& state, Mode mode) {
  require_system(state, System::acoustic, "acoustic_project");
  return acoustic_projector(state.acoustic_params(), mode).apply(state);
}

StateVector project(const StateVector& state, Mode mode) {
  switch (state.system()) {
    case System::string:
    case System::hyperbolic: {
      if (mode == Mode::entropy) {
        throw PreconditionError("the entropy mode exists only for the acoustic system");
      }
      const Direction d = mode == Mode::right ? Direction::right : Direction::left;
      return state.system() == System::string ? string_project(state, d)
                                              : hyperbolic_project(state, d);
    }
    case System::acoustic: return acoustic_project(state, mode);
  }
  throw PreconditionError("unknown system");
}

ModeDecomposition mode_decompose(const StateVector& state) {
  switch (state.system()) {
    case System::string:
      return {0.5 * (state[0] + state[1]), 0.5 * (state[0] - state[1]), std::nullopt,
              state.params(), {}};
    case System::hyperbolic: {
      const ScalarField q = apply_M_inv(state.hyperbolic_params().impedance(), state[1]);
      return {0.5 * (state[0] + q), 0.5 * (state[0] - q), std::nullopt, state.params(), {}};
    }
    case System::acoustic: {
      StateVector right = acoustic_project(state, Mode::right);
      StateVector left = acoustic_project(state, Mode::left);
      StateVector entropy = acoustic_project(state, Mode::entropy);
      ModeDecomposition d{right[0], left[0], entropy[2], state.params(), {}};
      d.parts = {std::move(right), std::move(left), std::move(entropy)};
      return d;
    }
  }
  throw PreconditionError("unknown system");
}

StateVector mode_compose(const ModeDecomposition& d) {
  switch (d.system()) {
    case System::string:
      return StateVector(d.params, {d.pi + d.lambda, d.pi - d.lambda});
    case System::hyperbolic: {
      const auto& hp = std::get<HyperbolicParams>(d.params);
      return StateVector(d.params, {d.pi + d.lambda, apply_M(hp.impedance(), d.pi - d.lambda)});
    }
    case System::acoustic: {
      if (d.parts.size() == 3) return d.parts[0] + d.parts[1] + d.parts[2];
      const ScalarField s = d.entropy ? *d.entropy : ScalarField(d.pi.grid());
      return StateVector(d.params, {d.pi + d.lambda, d.pi - d.lambda, d.pi - d.lambda + s});
    }
  }
  throw PreconditionError("unknown system");
}

StateVector pure_mode_state(const SystemParams& params, Mode mode, const ScalarField& a) {
  const ScalarField zero(a.grid());
  const double sg = mode == Mode::left ? -1.0 : 1.0;
  switch (system_of(params)) {
    case System::string:
      if (mode == Mode::entropy) throw PreconditionError("string has no entropy mode");
      return StateVector(params, {a, sg * a});
    case System::hyperbolic: {
      if (mode == Mode::entropy) throw PreconditionError("hyperbolic system has no entropy mode");
      const auto& hp = std::get<HyperbolicParams>(params);
      return StateVector(params, {a, sg * apply_M(hp.impedance(), a)});
    }
    case System::acoustic: {
      const auto& ap = std::get<AcousticParams>(params);
      StateVector seed = mode == Mode::entropy ? StateVector(params, {zero, zero, a})
                                               : StateVector(params, {a, sg * a, sg * a});
      return acoustic_projector(ap, mode).apply(seed);
    }
  }
  throw PreconditionError("unknown system");
}

namespace {
StateVector apply_hyperbolic_L(const HyperbolicParams& p, const StateVector& s) {
  return StateVector(s.params(), {p.b.sample() * derivative(s[1]), p.c.sample() * derivative(s[0])});
}

double ratio(const StateVector& num, const StateVector& den) {
  const double d = l2_norm(den);
  return d > 0.0 ? l2_norm(num) / d : 0.0;
}
}  // namespace

StateVector hyperbolic_commutator(const HyperbolicParams& params, const StateVector& probe) {
  require_system(probe, System::hyperbolic, "hyperbolic_commutator");
  const StateVector pl = hyperbolic_project(apply_hyperbolic_L(params, probe), Direction::right);
  const StateVector lp = apply_hyperbolic_L(params, hyperbolic_project(probe, Direction::right));
  return pl - lp;
}

std::vector<StateVector> probe_states(const SystemParams& params, const Grid1D& grid) {
  const double len = grid.length();
  const std::size_t ncomp = component_count(system_of(params));
  std::vector<StateVector> probes;
  probes.reserve(10);
  for (int j = 0; j < 10; ++j) {
    const double w = std::max(8.0 * grid.spacing(), len / 40.0 * (1.0 + 0.05 * j));
    const double c = -len / 10.0 + j * (len / 5.0) / 9.0;
    const auto pulse = [&](double center, double width, double amp) {
      return ScalarField::sample(grid, [=](double x) {
        const double s = (x - center) / width;
        return amp * std::exp(-0.5 * s * s);
      });
    };
    std::vector<ScalarField> comps;
    comps.push_back(pulse(c, w, 1.0));
    comps.push_back(pulse(c + 0.3 * w, 1.2 * w, (j % 2 == 0 ? 0.7 : -0.7)));
    if (ncomp == 3) comps.push_back(pulse(c - 0.2 * w, w, 0.5));
    probes.emplace_back(params, std::move(comps));
  }
  return probes;
}

double commutator_norm(const HyperbolicParams& params) {
  double worst = 0.0;
  for (const auto& g : probe_states(params, params.b.grid())) {
    worst = std::max(worst, ratio(hyperbolic_commutator(params, g), g));
  }
  return worst;
}

namespace {
std::vector<Mode> modes_of(System s) {
  if (s == System::acoustic) return {Mode::right, Mode::left, Mode::entropy};
  return {Mode::right, Mode::left};
}
}  // namespace

double idempotency_residual(const SystemParams& params, const Grid1D& grid) {
  double worst = 0.0;
  for (const auto& g : probe_states(params, grid)) {
    for (Mode m : modes_of(system_of(params))) {
      const StateVector pg = project(g, m);
      worst = std::max(worst, ratio(project(pg, m) - pg, g));
    }
  }
  return worst;
}

double completeness_residual(const SystemParams& params, const Grid1D& grid) {
  double worst = 0.0;
  for (const auto& g : probe_states(params, grid)) {
    StateVector sum = project(g, Mode::right) + project(g, Mode::left);
    if (system_of(params) == System::acoustic) sum += project(g, Mode::entropy);
    worst = std::max(worst, ratio(sum - g, g));
  }
  return worst;
}

double acoustic_commutator_residual(const AcousticParams& params, const Grid1D& grid) {
  const OperatorMatrix3 p1 = acoustic_projector(params, Mode::right);
  const OperatorMatrix3 l = acoustic_evolution_operator(params);
  double worst = 0.0;
  for (const auto& g : probe_states(params, grid)) {
    worst = std::max(worst, ratio(p1.apply(l.apply(g)) - l.apply(p1.apply(g)), g));
  }
  return worst;
}

std::vector<BetaScanRow> beta_scan(const AcousticParams& base, const Grid1D& grid,
                                   const std::vector<double>& betas) {
  std::vector<BetaScanRow> rows;
  rows.reserve(betas.size());
  for (double b : betas) {
    AcousticParams p = base;
    p.beta = b;
    rows.push_back({b, idempotency_residual(p, grid), acoustic_commutator_residual(p, grid)});
  }
  return rows;
}

}  // namespace wavesplit
