#include "config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace wavesplit::cli {

namespace {

std::string where(const YAML::Node& n) {
  const YAML::Mark m = n.Mark();
  if (m.line < 0) return "";
  return " (line " + std::to_string(m.line + 1) + ")";
}

[[noreturn]] void fail(const std::string& field, const std::string& what, const YAML::Node& at = {}) {
  throw ConfigError(field + ": " + what + (at.IsDefined() ? where(at) : ""));
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

// One YAML table with its dotted path; rejects keys it was not asked about.
class Table {
 public:
  Table(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path)) {
    if (node_.IsDefined() && !node_.IsNull() && !node_.IsMap()) fail(path_, "expected a table", node_);
  }

  bool has(const std::string& key) const {
    return node_.IsMap() && node_[key].IsDefined() && !node_[key].IsNull();
  }

  YAML::Node raw(const std::string& key) {
    seen_.insert(key);
    return node_.IsMap() ? node_[key] : YAML::Node();
  }

  template <class T>
  T get(const std::string& key, std::optional<T> fallback = std::nullopt) {
    const YAML::Node v = raw(key);
    if (!v.IsDefined() || v.IsNull()) {
      if (fallback) return *fallback;
      fail(join(path_, key), "required field is missing", node_);
    }
    try {
      return v.as<T>();
    } catch (const YAML::Exception&) {
      fail(join(path_, key), "cannot read value '" + YAML::Dump(v) + "'", v);
    }
  }

  void finish() const {
    if (!node_.IsMap()) return;
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!seen_.contains(key)) fail(join(path_, key), "unknown field", kv.first);
    }
  }

  const std::string& path() const { return path_; }
  const YAML::Node& node() const { return node_; }

 private:
  YAML::Node node_;
  std::string path_;
  std::set<std::string> seen_;
};

ProfileSpec read_profile(const YAML::Node& n, const std::string& path) {
  if (!n.IsDefined() || n.IsNull()) fail(path, "required field is missing");
  ProfileSpec p;
  if (n.IsScalar()) {
    try {
      p.baseline = n.as<double>();
    } catch (const YAML::Exception&) {
      fail(path, "expected a number or a profile table", n);
    }
    return p;
  }
  Table t(n, path);
  try {
    p.kind = profile_kind_from_string(t.get<std::string>("kind", std::string("constant")));
  } catch (const PreconditionError& e) {
    fail(join(path, "kind"), e.what(), n);
  }
  p.baseline = t.get<double>("baseline", 1.0);
  p.amplitude = t.get<double>("amplitude", 0.0);
  p.center = t.get<double>("center", 0.0);
  p.width = t.get<double>("width", 1.0);
  p.epsilon = t.get<double>("epsilon", 0.0);
  t.finish();
  return p;
}

nlohmann::ordered_json profile_json(const ProfileSpec& p) {
  return {{"kind", std::string(to_string(p.kind))}, {"baseline", p.baseline},
          {"amplitude", p.amplitude},                {"center", p.center},
          {"width", p.width},                        {"epsilon", p.epsilon}};
}

double mode_reach_speed(const ScenarioConfig& c, const SystemParams& p, Mode mode) {
  if (mode == Mode::entropy) return 0.0;
  switch (c.system) {
    case System::string: return c.string_c;
    case System::hyperbolic: return std::get<HyperbolicParams>(p).max_speed();
    case System::acoustic: return 1.0;
  }
  return 0.0;
}

}  // namespace

Grid1D ScenarioConfig::grid() const { return make_grid(grid_length, grid_points); }

SystemParams ScenarioConfig::params() const {
  const Grid1D g = grid();
  switch (system) {
    case System::string: return StringParams{string_c};
    case System::hyperbolic:
      return HyperbolicParams{CoefficientProfile(hyperbolic.b, g), CoefficientProfile(hyperbolic.c, g)};
    case System::acoustic: {
      if (acoustic.physical) return AcousticParams::from_physical(*acoustic.physical, acoustic.beta);
      AcousticParams a{acoustic.gamma, acoustic.delta1, acoustic.delta2, acoustic.beta, std::nullopt};
      a.validate();
      return a;
    }
  }
  throw ConfigError("system: unknown");
}

StateVector ScenarioConfig::initial_state() const {
  const Grid1D g = grid();
  const SystemParams p = params();
  std::vector<ScalarField> zero(component_count(system), ScalarField(g));
  StateVector s(p, zero);
  for (const auto& pulse : pulses) {
    s += pure_mode_state(p, pulse.mode, gaussian_pulse(g, pulse.center, pulse.width, pulse.amplitude));
  }
  return s;
}

std::vector<double> ScenarioConfig::observation_times() const {
  return uniform_times(observation.t_start, observation.t_end, observation.step());
}

ObservationSetup ScenarioConfig::observation_setup() const {
  return {observation.x_obs, stencil(), observation_times(), observation.noise_sigma, observation.seed};
}

SplineOptions ScenarioConfig::spline_options() const {
  return {diagnostics.spline_order, diagnostics.knot_spacing};
}

DiagnosticsOptions ScenarioConfig::diagnostics_options() const {
  DiagnosticsOptions o;
  o.kappa = diagnostics.kappa;
  o.spline = spline_options();
  o.threshold_frac = diagnostics.threshold_frac;
  o.t_zero = diagnostics.t_zero;
  o.delta_speed = diagnostics.delta_speed;
  o.delta_arrival = diagnostics.delta_arrival;
  return o;
}

void validate(const ScenarioConfig& c) {
  const auto guard = [](const std::string& field, auto&& fn) {
    try {
      fn();
    } catch (const PreconditionError& e) {
      throw ConfigError(field + ": " + e.what());
    }
  };
  guard("grid", [&] { c.grid(); });
  const Grid1D g = c.grid();
  SystemParams params = StringParams{};
  guard("params", [&] { params = c.params(); });
  if (c.system == System::string && !(c.string_c > 0.0)) throw ConfigError("params.c: must be > 0");

  if (c.pulses.empty()) throw ConfigError("pulses: at least one pulse is required");
  const auto& ob = c.observation;
  const double horizon = std::max(ob.t_end + (c.system == System::string ? ob.dt : 0.0), c.simulation.t_end);
  const double left = g.left(), right = g.left() + g.length();
  for (std::size_t i = 0; i < c.pulses.size(); ++i) {
    const auto& p = c.pulses[i];
    const std::string f = "pulses[" + std::to_string(i) + "]";
    if (p.shape != "gaussian") throw ConfigError(f + ".shape: only 'gaussian' is supported");
    if (p.mode == Mode::entropy && c.system != System::acoustic) {
      throw ConfigError(f + ".mode: entropy pulses exist only for the acoustic system");
    }
    if (!(p.width > 0.0)) throw ConfigError(f + ".width: must be > 0");
    guard(f, [&] { gaussian_pulse(g, p.center, p.width, p.amplitude); });
    const double reach = mode_reach_speed(c, params, p.mode) * horizon;
    const double lo = p.mode == Mode::left ? p.center - reach : p.center;
    const double hi = p.mode == Mode::right ? p.center + reach : p.center;
    if (lo - 2.0 * p.width < left || hi + 2.0 * p.width > right) {
      std::ostringstream m;
      m << f << ": excursion [" << lo << ", " << hi << "] up to t = " << horizon
        << " comes within 2 widths of the domain boundary [" << left << ", " << right << ")";
      throw ConfigError(m.str());
    }
  }

  if (!(ob.dt > 0.0)) throw ConfigError("observation.dt: must be > 0");
  if (!(ob.step() > 0.0)) throw ConfigError("observation.sample_step: must be > 0");
  if (!(ob.t_start >= 0.0)) throw ConfigError("observation.t_start: must be >= 0");
  if (!(ob.t_end > ob.t_start)) throw ConfigError("observation.t_end: must exceed t_start");
  if (!(ob.noise_sigma >= 0.0)) throw ConfigError("observation.noise_sigma: must be >= 0");
  if (ob.x_obs < left || ob.x_obs >= right) throw ConfigError("observation.x_obs: outside the domain");
  if (c.system == System::string) {
    if (!(ob.dx > 0.0)) throw ConfigError("observation.dx: must be > 0");
    if (ob.dx < g.spacing() * (1.0 - 1e-12)) {
      throw ConfigError("observation.dx: finer than the grid spacing " + std::to_string(g.spacing()));
    }
    if (ob.x_obs + ob.dx >= right) throw ConfigError("observation.dx: stencil leaves the domain");
  }
  if (c.observation_times().size() < 5) {
    throw ConfigError("observation: the window yields fewer than 5 samples");
  }

  const auto& d = c.diagnostics;
  if (!(d.kappa > 0.0)) throw ConfigError("diagnostics.kappa: must be > 0");
  if (d.spline_order < 1 || d.spline_order > 7) throw ConfigError("diagnostics.spline_order: must be in [1, 7]");
  if (d.knot_spacing < 0.0) throw ConfigError("diagnostics.knot_spacing: must be >= 0 (0 selects 2 sample steps)");
  if (!(d.threshold_frac > 0.0 && d.threshold_frac <= 1.0)) {
    throw ConfigError("diagnostics.threshold_frac: must be in (0, 1]");
  }
  if (d.delta_speed < 0.0) throw ConfigError("diagnostics.delta_speed: must be >= 0");
  if (d.delta_arrival < 0.0) throw ConfigError("diagnostics.delta_arrival: must be >= 0");
  if (!(c.simulation.t_end >= 0.0)) throw ConfigError("simulation.t_end: must be >= 0");
  if (c.simulation.frames < 1) throw ConfigError("simulation.frames: must be >= 1");
  if (c.output.directory.empty()) throw ConfigError("output.directory: must not be empty");
}

ScenarioConfig parse_config(const std::string& text, const std::string& origin) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  if (!root.IsMap()) throw ConfigError(origin + ": expected a table at the top level");
  // A run manifest carries the normalized config under "config".
  if (root["config"].IsDefined() && root["tool"].IsDefined()) root = root["config"];

  Table top(root, "");
  ScenarioConfig c;
  try {
    c.system = system_from_string(top.get<std::string>("system"));
  } catch (const PreconditionError& e) {
    fail("system", e.what(), root["system"]);
  }

  Table grid(top.raw("grid"), "grid");
  c.grid_length = grid.get<double>("length");
  c.grid_points = grid.get<int>("points");
  grid.finish();

  Table params(top.raw("params"), "params");
  switch (c.system) {
    case System::string: c.string_c = params.get<double>("c", 1.0); break;
    case System::hyperbolic: {
      c.hyperbolic.b = read_profile(params.raw("b"), "params.b");
      c.hyperbolic.c = read_profile(params.raw("c"), "params.c");
      if (params.has("epsilon")) {
        const double eps = params.get<double>("epsilon");
        c.hyperbolic.b.epsilon = eps;
        c.hyperbolic.c.epsilon = eps;
      }
      break;
    }
    case System::acoustic: {
      c.acoustic.beta = params.get<double>("beta", 0.0);
      if (params.has("physical")) {
        for (const char* k : {"gamma", "delta1", "delta2"}) {
          if (params.has(k)) fail(std::string("params.") + k, "give either 'physical' or the dimensionless set");
        }
        Table ph(params.raw("physical"), "params.physical");
        PhysicalInputs in;
        in.mu = ph.get<double>("mu");
        in.kappa = ph.get<double>("kappa");
        in.c_p = ph.get<double>("c_p");
        in.c_v = ph.get<double>("c_v");
        in.rho0 = ph.get<double>("rho0", 1.0);
        in.c0 = ph.get<double>("c0", 1.0);
        in.lambda_scale = ph.get<double>("lambda_scale", 1.0);
        ph.finish();
        c.acoustic.physical = in;
      } else {
        c.acoustic.gamma = params.get<double>("gamma", 1.4);
        c.acoustic.delta1 = params.get<double>("delta1", 0.0);
        c.acoustic.delta2 = params.get<double>("delta2", 0.0);
      }
      break;
    }
  }
  params.finish();

  const YAML::Node pulses = top.raw("pulses");
  if (!pulses.IsDefined() || !pulses.IsSequence()) fail("pulses", "expected a list of pulses", root);
  for (std::size_t i = 0; i < pulses.size(); ++i) {
    const std::string path = "pulses[" + std::to_string(i) + "]";
    Table t(pulses[i], path);
    PulseConfig p;
    try {
      p.mode = mode_from_string(t.get<std::string>("mode"));
    } catch (const PreconditionError& e) {
      fail(path + ".mode", e.what(), pulses[i]);
    }
    p.shape = t.get<std::string>("shape", std::string("gaussian"));
    p.center = t.get<double>("center");
    p.width = t.get<double>("width");
    p.amplitude = t.get<double>("amplitude", 1.0);
    t.finish();
    c.pulses.push_back(p);
  }

  Table ob(top.raw("observation"), "observation");
  c.observation.x_obs = ob.get<double>("x_obs", 0.0);
  c.observation.dx = ob.get<double>("dx", c.system == System::string ? std::nullopt : std::optional(0.0));
  c.observation.dt = ob.get<double>("dt");
  c.observation.t_start = ob.get<double>("t_start", 0.0);
  c.observation.t_end = ob.get<double>("t_end");
  c.observation.noise_sigma = ob.get<double>("noise_sigma", 0.0);
  c.observation.seed = ob.get<std::uint64_t>("seed", std::uint64_t{0});
  if (ob.has("sample_step")) c.observation.sample_step = ob.get<double>("sample_step");
  ob.finish();

  Table dg(top.raw("diagnostics"), "diagnostics");
  c.diagnostics.kappa = dg.get<double>("kappa", 3.0);
  c.diagnostics.spline_order = dg.get<int>("spline_order", 3);
  c.diagnostics.knot_spacing = dg.get<double>("knot_spacing", 0.0);
  c.diagnostics.threshold_frac = dg.get<double>("threshold_frac", 0.05);
  c.diagnostics.t_zero = dg.get<double>("t_zero", 0.0);
  c.diagnostics.delta_speed = dg.get<double>("delta_speed", 0.0);
  c.diagnostics.delta_arrival = dg.get<double>("delta_arrival", 0.0);
  dg.finish();

  Table out(top.raw("output"), "output");
  c.output.directory = out.get<std::string>("directory", std::string("out"));
  c.output.emit_plots = out.get<bool>("emit_plots", false);
  out.finish();

  Table sim(top.raw("simulation"), "simulation");
  c.simulation.t_end = sim.get<double>("t_end", c.observation.t_end);
  c.simulation.frames = sim.get<int>("frames", 11);
  sim.finish();

  top.finish();
  validate(c);
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path.string() + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return parse_config(s.str(), path.string());
}

nlohmann::ordered_json to_json(const ScenarioConfig& c) {
  nlohmann::ordered_json j;
  j["system"] = std::string(to_string(c.system));
  j["grid"] = {{"length", c.grid_length}, {"points", c.grid_points}};
  switch (c.system) {
    case System::string: j["params"] = {{"c", c.string_c}}; break;
    case System::hyperbolic:
      j["params"] = {{"b", profile_json(c.hyperbolic.b)}, {"c", profile_json(c.hyperbolic.c)}};
      break;
    case System::acoustic:
      if (c.acoustic.physical) {
        const auto& p = *c.acoustic.physical;
        j["params"] = {{"beta", c.acoustic.beta},
                       {"physical",
                        {{"mu", p.mu}, {"kappa", p.kappa}, {"c_p", p.c_p}, {"c_v", p.c_v},
                         {"rho0", p.rho0}, {"c0", p.c0}, {"lambda_scale", p.lambda_scale}}}};
      } else {
        j["params"] = {{"gamma", c.acoustic.gamma}, {"delta1", c.acoustic.delta1},
                       {"delta2", c.acoustic.delta2}, {"beta", c.acoustic.beta}};
      }
      break;
  }
  j["pulses"] = nlohmann::ordered_json::array();
  for (const auto& p : c.pulses) {
    j["pulses"].push_back({{"mode", std::string(to_string(p.mode))}, {"shape", p.shape},
                           {"center", p.center}, {"width", p.width}, {"amplitude", p.amplitude}});
  }
  const auto& o = c.observation;
  j["observation"] = {{"x_obs", o.x_obs},     {"dx", o.dx},           {"dt", o.dt},
                      {"t_start", o.t_start}, {"t_end", o.t_end},     {"noise_sigma", o.noise_sigma},
                      {"seed", o.seed},       {"sample_step", o.step()}};
  const auto& d = c.diagnostics;
  j["diagnostics"] = {{"kappa", d.kappa},
                      {"spline_order", d.spline_order},
                      {"knot_spacing", d.knot_spacing},
                      {"threshold_frac", d.threshold_frac},
                      {"t_zero", d.t_zero},
                      {"delta_speed", d.delta_speed},
                      {"delta_arrival", d.delta_arrival}};
  j["output"] = {{"directory", c.output.directory}, {"emit_plots", c.output.emit_plots}};
  j["simulation"] = {{"t_end", c.simulation.t_end}, {"frames", c.simulation.frames}};
  return j;
}

}  // namespace wavesplit::cli
