#include "sfi/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>

#include <json.hpp>

#include "sfi/errors.hpp"
#include "sfi/numerics.hpp"
#include "sfi/version.hpp"

namespace sfi {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw config_error("cannot create output directory " + dir);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot open " + path + " for writing");
  out << text;
}

double wall_now() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

ResolvedSetup build_setup(const RunConfig& cfg) {
  ResolvedSetup s;
  s.phys = cfg.phys;
  s.grid = cfg.grid;
  s.pot_none = cfg.pot_none;

  PulseSpec ps;
  ps.family = cfg.pulse_family;
  ps.epsilon = cfg.epsilon;
  ps.omega = cfg.omega;
  ps.envelope = cfg.envelope;
  ps.sample_s = cfg.sample_s;
  ps.sample_f = cfg.sample_f;
  ps.lambda = cfg.phys.lambda;
  ps.T = cfg.phys.T;
  BuildOptions bo;
  bo.quad_tol = cfg.pulse_quad_tol;
  bo.n_grid = cfg.pulse_n_grid;
  s.tables = build_tables(ps, bo);
  s.cert = check_assumptions(s.tables);

  if (cfg.delta_auto) s.phys.delta = 0.1 * s.phys.lambda * s.tables.C_ass2;
  if (cfg.K0_auto) s.phys.K0 = default_cutoff_K0(s.phys);

  if (cfg.pot_none) {
    s.pot = PotentialSpec{PotentialKind::short_range, 0.0, 1.0, 1.0, 0.0, 1.0};
  } else {
    s.pot.kind = cfg.pot_kind;
    s.pot.V0 = s.phys.V0;
    s.pot.D = s.phys.D;
    s.pot.alpha = s.phys.alpha;
    s.pot.Z = s.phys.Z;
    s.pot.soft_a = cfg.soft_a_auto ? 0.5 * s.grid.h() : cfg.soft_a;
  }

  s.cone.delta = s.phys.delta;
  s.cone.theta = s.phys.theta;
  s.cone.axis_mode = cfg.axis_mode;
  return s;
}

Wavefunction build_initial_state(const RunConfig& cfg, const ResolvedSetup& setup,
                                 RelaxInfo* relax_info) {
  if (cfg.initial_state == "gaussian") {
    return gaussian_state(setup.grid, setup.phys.R);
  }
  if (cfg.initial_state == "random") {
    return random_state(setup.grid, cfg.seed);
  }
  const double soft = setup.pot_none ? 0.0 : setup.pot.soft_a;
  return hydrogenic_ground_state(setup.grid, setup.phys.Z, soft, relax_info);
}

TrajectoryResult run_trajectory(const RunConfig& cfg, const ResolvedSetup& setup,
                                const Wavefunction& psi0) {
  const double t_start = wall_now();

  EvolutionPlan plan;
  plan.t0 = cfg.t0;
  plan.t1 = cfg.t_final;
  plan.dt = cfg.dt;
  plan.gauge = cfg.gauge;
  plan.frame = cfg.frame;
  plan.absorber = cfg.absorber;
  plan.diag_stride = cfg.observable_stride;
  plan.snapshot_stride = cfg.snapshot_stride;

  const double lamT = setup.phys.lambda * setup.phys.T;
  TrajectoryResult out;

  auto observe = [&](double t, const Wavefunction& psi) {
    ObservableRow row;
    row.t = t;
    const Vec3 offset =
        cfg.frame == Frame::comoving
            ? project_dim((2.0 * lamT) * setup.tables.G_at(t / setup.phys.T),
                          psi.grid.dim)
            : Vec3{};
    ConeObservable cone_G = setup.cone;
    cone_G.axis_mode = AxisMode::G_of_t;
    ConeObservable cone_F1 = setup.cone;
    cone_F1.axis_mode = AxisMode::F1_fixed;
    try {
      row.N_G = cone_norm(psi, t, cone_G, setup.tables, offset);
    } catch (const invalid_argument&) {
      row.N_G = kNaN;
    }
    try {
      row.N_F1 = cone_norm(psi, t, cone_F1, setup.tables, offset);
    } catch (const invalid_argument&) {
      row.N_F1 = kNaN;
    }
    row.survival = survival_probability(psi, psi0);
    row.W = spreading(psi);
    try {
      const EjectionKinematics kin =
          ejection_kinematics(psi, setup.tables, setup.phys.T);
      row.v_mean = kin.mean_velocity;
      row.angle = kin.opening_angle;
    } catch (const invalid_argument&) {
      row.v_mean = {kNaN, kNaN, kNaN};
      row.angle = kNaN;
    }
    out.rows.push_back(row);
  };

  Trajectory traj = evolve_split(psi0, plan, setup.tables, setup.pot, observe);
  out.final = std::move(traj.final);
  out.steps = traj.steps;
  out.diag = std::move(traj.diag);
  out.wall_seconds = wall_now() - t_start;

  if (cfg.snapshot_stride > 0 && cfg.snapshots_binary) {
    const std::string dir = cfg.out_dir + "/snapshots";
    ensure_dir(dir);
    int i = 0;
    for (const auto& [t, psi] : traj.snapshots) {
      char name[64];
      std::snprintf(name, sizeof(name), "/snap_%04d", i++);
      write_wavefunction(psi, dir + name + ".wf");
      write_slice_csv(psi, 0, dir + name + "_x.csv");
    }
  }
  return out;
}

void write_diagnostics_csv(const std::vector<StepDiagnostics>& diag,
                           const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) throw config_error("cannot open " + path + " for writing");
  std::fprintf(fp, "t,norm,energy,centroid_x,centroid_y,centroid_z\n");
  for (const auto& d : diag) {
    std::fprintf(fp, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", d.t, d.norm, d.energy,
                 d.centroid.x, d.centroid.y, d.centroid.z);
  }
  std::fclose(fp);
}

void write_observables_csv(const std::vector<ObservableRow>& rows,
                           const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) throw config_error("cannot open " + path + " for writing");
  std::fprintf(fp, "t,N_G,N_F1,survival,W,v_x,v_y,v_z,angle\n");
  for (const auto& r : rows) {
    std::fprintf(fp, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t,
                 r.N_G, r.N_F1, r.survival, r.W, r.v_mean.x, r.v_mean.y, r.v_mean.z,
                 r.angle);
  }
  std::fclose(fp);
}

namespace {

json ionization_bound_to_json(const IonizationBound& b) {
  json j;
  j["value"] = b.value;
  j["vacuous"] = b.vacuous;
  j["undefined"] = b.undefined;
  j["term_cone"] = b.term_cone;
  j["term_tail"] = b.term_tail;
  j["term_kappa"] = b.term_kappa;
  j["kappa"] = b.kappa;
  j["kappa_s0"] = b.kappa_s0;
  j["constants"] = {{"C1", b.constants.C1}, {"C2", b.constants.C2},
                    {"C3", b.constants.C3}};
  return j;
}

}  // namespace

std::string bound_report_json(const RunConfig& cfg, const ResolvedSetup& setup,
                              const BoundConstants& c) {
  json j;
  j["version"] = kVersion;
  j["config_hash"] = config_hash(cfg);

  const DimensionlessGroups g = DimensionlessGroups::compute(setup.phys);
  j["groups"] = {{"RL", g.RL},
                 {"R2_over_T", g.R2_over_T},
                 {"Z_over_lambda", g.Z_over_lambda},
                 {"K0R", g.K0R},
                 {"K0T_over_R", g.K0T_over_R}};

  j["pulse"] = {{"F1_norm", setup.cert.F1_norm},
                {"C_ass2", setup.cert.C_ass2},
                {"ass2_method", setup.cert.ass2_method},
                {"ass0_verified_on_samples", setup.cert.ass0_verified_on_samples}};

  KappaOptions kopt;
  const KappaResult kr =
      kappa_lambda(setup.tables, setup.phys.R, setup.phys.T, setup.phys.lambda, kopt);
  j["kappa"] = {{"value", kr.value}, {"s0", kr.s0}, {"boundary", kr.boundary}};
  j["fks_bound"] = {
      {"value", fks_bound(setup.phys.V0, setup.phys.D, setup.phys.R, setup.phys.T,
                          kr.value)},
      {"C", 1.0}};

  const double t_eval = std::max(cfg.t_final, setup.phys.T);
  j["short_range_bound"] = ionization_bound_to_json(
      short_range_lower_bound(setup.phys, setup.tables, t_eval, c, kopt));
  j["coulomb_bound"] = ionization_bound_to_json(
      coulomb_lower_bound(setup.phys, setup.tables, t_eval, c, kopt));
  j["settings"] = {{"kappa_quad_tol", kopt.quad_tol},
                   {"kappa_bracket_floor", kopt.bracket_floor},
                   {"pulse_quad_tol", cfg.pulse_quad_tol},
                   {"t_eval", t_eval}};
  return j.dump(2) + "\n";
}

namespace {

json validation_to_json(const ValidationReport& rep) {
  json rows = json::array();
  for (const auto& r : rep.rows) {
    rows.push_back({{"name", r.name},
                    {"required", r.required},
                    {"value", r.value},
                    {"lo", r.lo},
                    {"hi", r.hi},
                    {"pass", r.pass}});
  }
  return {{"rows", rows},
          {"pass", rep.pass},
          {"band_C", rep.band_C},
          {"c_ass2", rep.c_ass2}};
}

json decay_to_json(const DecayReport& d) {
  return {{"R_fit", d.R_fit},
          {"C_fit", d.C_fit},
          {"gamma_fit", d.gamma_fit},
          {"gamma_lo", d.gamma_lo},
          {"gamma_hi", d.gamma_hi},
          {"super_polynomial", d.super_polynomial},
          {"sr_gamma_ok", d.sr_gamma_ok},
          {"cou_gamma4_compatible", d.cou_gamma4_compatible}};
}

void write_runinfo(const RunConfig& cfg, double wall_seconds, std::uint64_t steps) {
  json j;
  j["version"] = kVersion;
  j["config_hash"] = config_hash(cfg);
  j["wall_seconds"] = wall_seconds;
  j["steps"] = steps;
  write_text(cfg.out_dir + "/runinfo.json", j.dump(2) + "\n");
}

}  // namespace

int cmd_validate(const RunConfig& cfg) {
  ensure_dir(cfg.out_dir);
  const ResolvedSetup setup = build_setup(cfg);

  const HypothesisSet set = cfg.pot_kind == PotentialKind::coulomb && !cfg.pot_none
                                ? HypothesisSet::coulomb
                                : HypothesisSet::short_range;
  ValidateOptions vopt;
  vopt.c_ass2 = setup.tables.C_ass2;
  const ValidationReport rep = validate(setup.phys, set, vopt);

  // decay assumptions are checked on the bare profile of the configured
  // initial state; relaxation does not change the decay class
  RunConfig bare = cfg;
  bare.soft_a_auto = false;
  bare.soft_a = 0.0;
  ResolvedSetup bare_setup = setup;
  bare_setup.pot.soft_a = 0.0;
  const Wavefunction psi0 = build_initial_state(bare, bare_setup, nullptr);
  const DecayReport decay = check_decay(psi0);

  const bool pass = rep.pass && setup.cert.ass1_pass &&
                    setup.cert.ass0_verified_on_samples && decay.sr_gamma_ok;

  json j;
  j["params"] = validation_to_json(rep);
  j["assumptions"] = {{"F1_norm", setup.cert.F1_norm},
                      {"ass1_pass", setup.cert.ass1_pass},
                      {"C_ass2", setup.cert.C_ass2},
                      {"ass2_method", setup.cert.ass2_method},
                      {"ass0_s0_ladder", setup.cert.ass0_s0_ladder},
                      {"ass0_integrals", setup.cert.ass0_integrals},
                      {"ass0_verified_on_samples", setup.cert.ass0_verified_on_samples}};
  j["decay"] = decay_to_json(decay);
  j["pass"] = pass;
  write_text(cfg.out_dir + "/validation.json", j.dump(2) + "\n");
  write_text(cfg.out_dir + "/config.echo", config_to_json_text(cfg));
  std::printf("%s\n", pass ? "validate: PASS" : "validate: FAIL");
  return pass ? 0 : 1;
}

int cmd_bounds(const RunConfig& cfg) {
  ensure_dir(cfg.out_dir);
  const ResolvedSetup setup = build_setup(cfg);
  write_text(cfg.out_dir + "/bounds.json", bound_report_json(cfg, setup));
  write_pulse_csv(setup.tables, cfg.out_dir + "/pulse.csv");
  write_text(cfg.out_dir + "/config.echo", config_to_json_text(cfg));
  return 0;
}

int cmd_evolve(const RunConfig& cfg) {
  ensure_dir(cfg.out_dir);
  const ResolvedSetup setup = build_setup(cfg);
  const Wavefunction psi0 = build_initial_state(cfg, setup, nullptr);
  const TrajectoryResult res = run_trajectory(cfg, setup, psi0);

  write_observables_csv(res.rows, cfg.out_dir + "/observables.csv");
  write_diagnostics_csv(res.diag, cfg.out_dir + "/diagnostics.csv");
  write_text(cfg.out_dir + "/config.echo", config_to_json_text(cfg));
  if (cfg.phys.lambda > 0.0) {
    write_text(cfg.out_dir + "/bounds.json", bound_report_json(cfg, setup));
  }
  write_runinfo(cfg, res.wall_seconds, res.steps);
  return 0;
}

int cmd_sweep(const RunConfig& cfg) {
  if (cfg.sweep_values.size() < 2) {
    throw config_error("sweep: need at least two ladder values");
  }
  ensure_dir(cfg.out_dir);

  // The hydrogenic initial state does not depend on lambda; build it
  // once and share it across rungs.
  Wavefunction shared_psi0;
  bool have_shared = false;
  if (cfg.sweep_axis == "lambda" && cfg.initial_state != "random") {
    const ResolvedSetup s0 = build_setup(cfg);
    shared_psi0 = build_initial_state(cfg, s0, nullptr);
    have_shared = true;
  }

  struct RungOutput {
    double value = 0.0;
    ObservableRow last;
    std::vector<ObservableRow> rows;
  };
  std::vector<RungOutput> outputs(cfg.sweep_values.size());

  auto run_rung = [&](std::size_t i) {
    RunConfig rc = cfg;
    const double v = cfg.sweep_values[i];
    if (cfg.sweep_axis == "lambda") {
      rc.phys.lambda = v;
    } else if (cfg.sweep_axis == "R") {
      rc.phys.R = v;
    } else {
      rc.phys.Z = v;
    }
    const ResolvedSetup setup = build_setup(rc);
    const Wavefunction psi0 =
        have_shared && cfg.sweep_axis == "lambda" && rc.initial_state != "random"
            ? shared_psi0
            : build_initial_state(rc, setup, nullptr);
    TrajectoryResult res = run_trajectory(rc, setup, psi0);
    outputs[i].value = v;
    outputs[i].last = res.rows.back();
    outputs[i].rows = std::move(res.rows);
  };

  const int workers = std::max(1, cfg.workers);
  std::size_t next = 0;
  while (next < cfg.sweep_values.size()) {
    std::vector<std::future<void>> batch;
    for (int w = 0; w < workers && next < cfg.sweep_values.size(); ++w, ++next) {
      batch.push_back(std::async(std::launch::async, run_rung, next));
    }
    for (auto& f : batch) f.get();
  }

  // per-rung directories plus the ladder aggregate
  std::FILE* fp = std::fopen((cfg.out_dir + "/sweep.csv").c_str(), "w");
  if (!fp) throw config_error("cannot open sweep.csv for writing");
  std::fprintf(fp, "%s,N_G,N_F1,survival,W,v_x,v_y,v_z,angle\n", cfg.sweep_axis.c_str());
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    const auto& r = outputs[i].last;
    std::fprintf(fp, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                 outputs[i].value, r.N_G, r.N_F1, r.survival, r.W, r.v_mean.x,
                 r.v_mean.y, r.v_mean.z, r.angle);
    char sub[64];
    std::snprintf(sub, sizeof(sub), "/rung_%02zu", i);
    ensure_dir(cfg.out_dir + sub);
    write_observables_csv(outputs[i].rows, cfg.out_dir + sub + "/observables.csv");
  }
  std::fclose(fp);

  json fits;
  auto try_fit = [&](const char* name, auto getter) {
    std::vector<double> xs, ys;
    for (const auto& o : outputs) {
      const double y = getter(o.last);
      if (std::isfinite(y) && y > 0.0) {
        xs.push_back(o.value);
        ys.push_back(y);
      }
    }
    if (xs.size() >= 2) {
      const ScalingFit f = fit_scaling(xs, ys);
      fits[name] = {{"exponent", f.exponent},
                    {"stderr", f.stderr_},
                    {"log_amplitude", f.log_amplitude},
                    {"points", xs.size()}};
    } else {
      fits[name] = nullptr;
    }
  };
  try_fit("deficit_1_minus_N", [&](const ObservableRow& r) {
    const double N = cfg.axis_mode == AxisMode::G_of_t ? r.N_G : r.N_F1;
    return 1.0 - N;
  });
  try_fit("opening_angle", [](const ObservableRow& r) { return r.angle; });
  try_fit("survival", [](const ObservableRow& r) { return r.survival; });
  write_text(cfg.out_dir + "/fits.json", fits.dump(2) + "\n");
  write_text(cfg.out_dir + "/config.echo", config_to_json_text(cfg));
  return 0;
}

}  // namespace sfi
