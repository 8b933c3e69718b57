#include "sfi/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sfi/errors.hpp"
#include "sfi/numerics.hpp"

namespace sfi {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw config_error("config: field '" + field + "': " + why);
}

double get_num(const json& j, const std::string& field, double dflt) {
  if (!j.contains(field)) return dflt;
  if (!j[field].is_number()) fail(field, "expected a number");
  return j[field].get<double>();
}

/// Number or the string "auto"; returns whether auto was selected.
double get_num_auto(const json& j, const std::string& field, double dflt, bool* is_auto,
                    bool dflt_auto) {
  if (!j.contains(field)) {
    *is_auto = dflt_auto;
    return dflt;
  }
  if (j[field].is_string()) {
    if (j[field].get<std::string>() != "auto") fail(field, "expected number or \"auto\"");
    *is_auto = true;
    return dflt;
  }
  if (!j[field].is_number()) fail(field, "expected number or \"auto\"");
  *is_auto = false;
  return j[field].get<double>();
}

int get_int(const json& j, const std::string& field, int dflt) {
  if (!j.contains(field)) return dflt;
  if (!j[field].is_number_integer()) fail(field, "expected an integer");
  return j[field].get<int>();
}

bool get_bool(const json& j, const std::string& field, bool dflt) {
  if (!j.contains(field)) return dflt;
  if (!j[field].is_boolean()) fail(field, "expected a boolean");
  return j[field].get<bool>();
}

std::string get_str(const json& j, const std::string& field, const std::string& dflt) {
  if (!j.contains(field)) return dflt;
  if (!j[field].is_string()) fail(field, "expected a string");
  return j[field].get<std::string>();
}

Vec3 get_vec3(const json& j, const std::string& field, const Vec3& dflt) {
  if (!j.contains(field)) return dflt;
  if (!j[field].is_array() || j[field].size() != 3) fail(field, "expected [x, y, z]");
  return {j[field][0].get<double>(), j[field][1].get<double>(),
          j[field][2].get<double>()};
}

json vec3_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

}  // namespace

RunConfig config_from_json_text(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error(origin + ": parse error at byte " + std::to_string(e.byte) +
                       ": " + e.what());
  }
  RunConfig c;

  const json phys = j.value("physical", json::object());
  c.phys.lambda = get_num(phys, "lambda", c.phys.lambda);
  c.phys.T = get_num(phys, "T", c.phys.T);
  c.phys.R = get_num(phys, "R", c.phys.R);
  c.phys.Z = get_num(phys, "Z", c.phys.Z);
  c.phys.V0 = get_num(phys, "V0", c.phys.V0);
  c.phys.D = get_num(phys, "D", c.phys.D);
  c.phys.alpha = get_num(phys, "alpha", c.phys.alpha);
  c.phys.theta = get_num(phys, "theta", c.phys.theta);
  c.phys.delta = get_num_auto(phys, "delta", 0.0, &c.delta_auto, true);
  c.phys.K0 = get_num_auto(phys, "K0", 0.0, &c.K0_auto, true);

  const json pulse = j.value("pulse", json::object());
  const std::string family = get_str(pulse, "family", "linear");
  if (family == "linear") {
    c.pulse_family = PulseFamily::linear;
  } else if (family == "circular_modulated") {
    c.pulse_family = PulseFamily::circular_modulated;
  } else if (family == "custom_sampled") {
    c.pulse_family = PulseFamily::custom_sampled;
  } else {
    fail("pulse.family", "expected linear | circular_modulated | custom_sampled");
  }
  c.epsilon = get_vec3(pulse, "epsilon", c.epsilon);
  c.omega = get_num(pulse, "omega", c.omega);
  const std::string env = get_str(pulse, "envelope", "sin2");
  if (env != "sin2") fail("pulse.envelope", "only sin2 is available");
  c.envelope = PulseEnvelope::sin2;
  c.pulse_n_grid = get_int(pulse, "n_grid", c.pulse_n_grid);
  c.pulse_quad_tol = get_num(pulse, "quad_tol", c.pulse_quad_tol);
  if (pulse.contains("samples_s")) {
    for (const auto& v : pulse["samples_s"]) c.sample_s.push_back(v.get<double>());
    if (!pulse.contains("samples_f")) fail("pulse.samples_f", "missing");
    for (const auto& v : pulse["samples_f"]) {
      if (!v.is_array() || v.size() != 3) fail("pulse.samples_f", "expected [x,y,z] rows");
      c.sample_f.push_back({v[0].get<double>(), v[1].get<double>(), v[2].get<double>()});
    }
  }

  const json pot = j.value("potential", json::object());
  const std::string kind = get_str(pot, "kind", "coulomb");
  if (kind == "coulomb") {
    c.pot_kind = PotentialKind::coulomb;
  } else if (kind == "short_range") {
    c.pot_kind = PotentialKind::short_range;
  } else if (kind == "none") {
    c.pot_none = true;
  } else {
    fail("potential.kind", "expected coulomb | short_range | none");
  }
  c.soft_a = get_num_auto(pot, "soft_a", 0.0, &c.soft_a_auto, true);

  const json grid = j.value("grid", json::object());
  c.grid.dim = get_int(grid, "dim", 2);
  c.grid.n = get_int(grid, "n", 256);
  c.grid.L_box = get_num(grid, "L_box", 16.0);
  c.grid.center = get_vec3(grid, "center", {});
  try {
    c.grid.validate();
  } catch (const invalid_argument& e) {
    fail("grid", e.what());
  }

  const json evo = j.value("evolution", json::object());
  c.t0 = get_num(evo, "t0", 0.0);
  c.t_final = get_num(evo, "t_final", 1.0);
  c.dt = get_num(evo, "dt", 1e-3);
  const std::string gauge = get_str(evo, "gauge", "kramers");
  if (gauge == "kramers") {
    c.gauge = Gauge::kramers;
  } else if (gauge == "ritz") {
    c.gauge = Gauge::ritz;
  } else {
    fail("evolution.gauge", "expected kramers | ritz");
  }
  const std::string frame = get_str(evo, "frame", "lab");
  if (frame == "lab") {
    c.frame = Frame::lab;
  } else if (frame == "comoving") {
    c.frame = Frame::comoving;
  } else {
    fail("evolution.frame", "expected lab | comoving");
  }
  const json absorber = evo.value("absorber", json::object());
  c.absorber.enabled = get_bool(absorber, "enabled", false);
  c.absorber.width = get_num(absorber, "width", 0.0);
  c.absorber.exponent = get_num(absorber, "exponent", 8.0);
  c.absorber.strength = get_num(absorber, "strength", 100.0);

  const json obs = j.value("observable", json::object());
  const std::string axis = get_str(obs, "axis_mode", "G_of_t");
  if (axis == "G_of_t") {
    c.axis_mode = AxisMode::G_of_t;
  } else if (axis == "F1_fixed") {
    c.axis_mode = AxisMode::F1_fixed;
  } else {
    fail("observable.axis_mode", "expected G_of_t | F1_fixed");
  }

  const json init = j.value("initial_state", json::object());
  c.initial_state = get_str(init, "kind", "hydrogenic");
  if (c.initial_state != "hydrogenic" && c.initial_state != "gaussian" &&
      c.initial_state != "random") {
    fail("initial_state.kind", "expected hydrogenic | gaussian | random");
  }

  const json out = j.value("output", json::object());
  c.out_dir = get_str(out, "dir", "run");
  c.observable_stride = get_int(out, "observable_stride", 100);
  c.snapshot_stride = get_int(out, "snapshot_stride", 0);
  c.snapshots_binary = get_bool(out, "snapshots_binary", false);

  const json sweep = j.value("sweep", json::object());
  c.sweep_axis = get_str(sweep, "axis", "lambda");
  if (c.sweep_axis != "lambda" && c.sweep_axis != "R" && c.sweep_axis != "Z") {
    fail("sweep.axis", "expected lambda | R | Z");
  }
  if (sweep.contains("values")) {
    for (const auto& v : sweep["values"]) c.sweep_values.push_back(v.get<double>());
    for (std::size_t i = 1; i < c.sweep_values.size(); ++i) {
      if (!(c.sweep_values[i] > c.sweep_values[i - 1])) {
        fail("sweep.values", "ladder must be strictly increasing");
      }
    }
  }

  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  c.workers = get_int(j, "workers", 1);
  if (c.workers < 1) fail("workers", "must be >= 1");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json_text(ss.str(), path);
}

namespace {

json config_to_json(const RunConfig& c, bool semantic_only) {
  json j;
  json phys;
  phys["lambda"] = c.phys.lambda;
  phys["T"] = c.phys.T;
  phys["R"] = c.phys.R;
  phys["Z"] = c.phys.Z;
  phys["V0"] = c.phys.V0;
  phys["D"] = c.phys.D;
  phys["alpha"] = c.phys.alpha;
  phys["theta"] = c.phys.theta;
  if (c.delta_auto) {
    phys["delta"] = "auto";
  } else {
    phys["delta"] = c.phys.delta;
  }
  if (c.K0_auto) {
    phys["K0"] = "auto";
  } else {
    phys["K0"] = c.phys.K0;
  }
  j["physical"] = phys;

  json pulse;
  pulse["family"] = c.pulse_family == PulseFamily::linear ? "linear"
                    : c.pulse_family == PulseFamily::circular_modulated
                        ? "circular_modulated"
                        : "custom_sampled";
  pulse["epsilon"] = vec3_to_json(c.epsilon);
  pulse["omega"] = c.omega;
  pulse["envelope"] = "sin2";
  pulse["n_grid"] = c.pulse_n_grid;
  pulse["quad_tol"] = c.pulse_quad_tol;
  if (!c.sample_s.empty()) {
    pulse["samples_s"] = c.sample_s;
    json sf = json::array();
    for (const auto& v : c.sample_f) sf.push_back(vec3_to_json(v));
    pulse["samples_f"] = sf;
  }
  j["pulse"] = pulse;

  json pot;
  pot["kind"] = c.pot_none ? "none"
                : c.pot_kind == PotentialKind::coulomb ? "coulomb"
                                                       : "short_range";
  if (c.soft_a_auto) {
    pot["soft_a"] = "auto";
  } else {
    pot["soft_a"] = c.soft_a;
  }
  j["potential"] = pot;

  json grid;
  grid["dim"] = c.grid.dim;
  grid["n"] = c.grid.n;
  grid["L_box"] = c.grid.L_box;
  grid["center"] = vec3_to_json(c.grid.center);
  j["grid"] = grid;

  json evo;
  evo["t0"] = c.t0;
  evo["t_final"] = c.t_final;
  evo["dt"] = c.dt;
  evo["gauge"] = c.gauge == Gauge::kramers ? "kramers" : "ritz";
  evo["frame"] = c.frame == Frame::lab ? "lab" : "comoving";
  json absorber;
  absorber["enabled"] = c.absorber.enabled;
  absorber["width"] = c.absorber.width;
  absorber["exponent"] = c.absorber.exponent;
  absorber["strength"] = c.absorber.strength;
  evo["absorber"] = absorber;
  j["evolution"] = evo;

  json obs;
  obs["axis_mode"] = c.axis_mode == AxisMode::G_of_t ? "G_of_t" : "F1_fixed";
  j["observable"] = obs;

  json init;
  init["kind"] = c.initial_state;
  j["initial_state"] = init;

  json sweep;
  sweep["axis"] = c.sweep_axis;
  sweep["values"] = c.sweep_values;
  j["sweep"] = sweep;

  j["seed"] = c.seed;

  if (!semantic_only) {
    json out;
    out["dir"] = c.out_dir;
    out["observable_stride"] = c.observable_stride;
    out["snapshot_stride"] = c.snapshot_stride;
    out["snapshots_binary"] = c.snapshots_binary;
    j["output"] = out;
    j["workers"] = c.workers;
  } else {
    // output cadence changes what gets written, so it is semantic for
    // reproducibility purposes; the directory and worker count are not
    json out;
    out["observable_stride"] = c.observable_stride;
    out["snapshot_stride"] = c.snapshot_stride;
    out["snapshots_binary"] = c.snapshots_binary;
    j["output"] = out;
  }
  return j;
}

}  // namespace

std::string config_to_json_text(const RunConfig& cfg) {
  return config_to_json(cfg, false).dump(2) + "\n";
}

std::string config_hash(const RunConfig& cfg) {
  const std::string s = config_to_json(cfg, true).dump();
  const std::uint64_t h = fnv1a64(s.data(), s.size());
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace sfi
