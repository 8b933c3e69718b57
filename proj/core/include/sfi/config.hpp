#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sfi/grid.hpp"
#include "sfi/observables.hpp"
#include "sfi/params.hpp"
#include "sfi/potential.hpp"
#include "sfi/propagator.hpp"
#include "sfi/pulse.hpp"

namespace sfi {

/// Full run description as read from the JSON config file. Quantities
/// that default to derived values (delta, K0, soft_a) carry auto flags
/// and are resolved against the pulse tables and grid by the harness.
struct RunConfig {
  PhysParams phys;
  bool delta_auto = true;   ///< delta = 0.1 lambda C_ass2
  bool K0_auto = true;      ///< K0 T / R = (R lambda)^{2/35}
  bool soft_a_auto = true;  ///< soft_a = h/2

  PulseFamily pulse_family = PulseFamily::linear;
  Vec3 epsilon{1.0, 0.0, 0.0};
  double omega = 8.0 * M_PI;
  PulseEnvelope envelope = PulseEnvelope::sin2;
  std::vector<double> sample_s;
  std::vector<Vec3> sample_f;
  int pulse_n_grid = 4096;
  double pulse_quad_tol = 1e-10;

  PotentialKind pot_kind = PotentialKind::coulomb;
  bool pot_none = false;  ///< free evolution (V = 0)
  double soft_a = 0.0;

  GridSpec grid;

  double t0 = 0.0;
  double t_final = 1.0;
  double dt = 1e-3;
  Gauge gauge = Gauge::kramers;
  Frame frame = Frame::lab;
  AbsorberSpec absorber;

  AxisMode axis_mode = AxisMode::G_of_t;
  std::string initial_state = "hydrogenic";  ///< hydrogenic | gaussian | random

  std::string out_dir = "run";
  int observable_stride = 100;
  int snapshot_stride = 0;
  bool snapshots_binary = false;

  std::string sweep_axis = "lambda";
  std::vector<double> sweep_values;

  std::uint64_t seed = 0;
  int workers = 1;
};

/// Parses a config file; throws config_error with a line/field
/// diagnostic on malformed input.
RunConfig load_config(const std::string& path);
RunConfig config_from_json_text(const std::string& text, const std::string& origin);

/// Canonical serialization (sorted keys, shortest-roundtrip doubles).
/// load(config_to_json_text(cfg)) == cfg.
std::string config_to_json_text(const RunConfig& cfg);

/// FNV-1a64 over the canonical serialization of the semantic fields
/// (everything except output directory and worker count), hex-encoded.
/// Stable under field reordering in the source file.
std::string config_hash(const RunConfig& cfg);

}  // namespace sfi
