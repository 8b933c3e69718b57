#include "sfi/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "sfi/bounds.hpp"
#include "sfi/config.hpp"
#include "sfi/errors.hpp"
#include "sfi/harness.hpp"
#include "sfi/observables.hpp"
#include "sfi/propagator.hpp"
#include "sfi/version.hpp"

namespace sfi {

namespace {

double wall_now() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

PulseTables linear_tables(double lambda, double T) {
  PulseSpec ps;
  ps.family = PulseFamily::linear;
  ps.epsilon = {1.0, 0.0, 0.0};
  ps.lambda = lambda;
  ps.T = T;
  return build_tables(ps);
}

PulseTables circular_tables(double lambda, double T, double omega) {
  PulseSpec ps;
  ps.family = PulseFamily::circular_modulated;
  ps.omega = omega;
  ps.lambda = lambda;
  ps.T = T;
  return build_tables(ps);
}

PotentialSpec no_potential() {
  return PotentialSpec{PotentialKind::short_range, 0.0, 1.0, 1.0, 0.0, 1.0};
}

double l2_diff(const Wavefunction& a, const Wavefunction& b) {
  if (!(a.grid == b.grid) || a.repr != b.repr) {
    throw invalid_argument("l2_diff: mismatched states");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.v.size(); ++i) s += std::norm(a.v[i] - b.v[i]);
  return std::sqrt(s * a.measure());
}

/// Ground states are expensive at 256^2; cache them per process.
const Wavefunction& cached_ground_state(const GridSpec& grid, double Z, double soft_a) {
  static std::map<std::string, Wavefunction> cache;
  const std::string key = fmt("%d_%d_%.9g_%.9g_%.9g", grid.dim, grid.n, grid.L_box, Z,
                              soft_a);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, hydrogenic_ground_state(grid, Z, soft_a)).first;
  }
  return it->second;
}

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) return false;
  }
  return true;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

std::string join_values(const std::vector<double>& v, const char* f = "%.3g") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += " ";
    s += fmt(f, v[i]);
  }
  return s;
}

// ---------------------------------------------------------------------
// C1: split-step Kramers vs exact free propagator, 1D and 2D, V = 0.

CriterionResult criterion_1(Scale scale) {
  CriterionResult r{1, "exact free-propagator oracle + Strang order", false, "", 0.0};
  const bool smoke = scale == Scale::smoke;

  GridSpec g1{1, smoke ? 256 : 1024, 32.0, {}};
  const Wavefunction psi1 = gaussian_state(g1, 1.0);
  const PotentialSpec none = no_potential();

  auto run_err = [&](const Wavefunction& psi0, const PulseTables& tbl,
                     const Wavefunction& exact, double dt) {
    EvolutionPlan plan;
    plan.t0 = 0.0;
    plan.t1 = 1.0;
    plan.dt = dt;
    const Trajectory t = evolve_split(psi0, plan, tbl, none);
    return l2_diff(t.final, exact);
  };

  // Order probe with the linear pulse: its A' is nonzero at the window
  // edges, so the midpoint-sampling error has a clean dt^2 leading term
  // (smooth envelopes superconverge and hide the order in roundoff).
  const PulseTables tbl_lin = linear_tables(1.0, 1.0);
  const Wavefunction exact_lin = free_kramers_exact(psi1, 0.0, 1.0, tbl_lin);
  const std::vector<double> dts = {8e-4, 4e-4, 2e-4};
  std::vector<double> errs;
  for (double dt : dts) errs.push_back(run_err(psi1, tbl_lin, exact_lin, dt));
  const double order1 = std::log2(errs[0] / errs[1]);
  const double order2 = std::log2(errs[1] / errs[2]);

  // Fine-dt agreement with the circular pulse, whose translation factor
  // exercises the k-dependent part of the multiplier.
  const PulseTables tbl1 = circular_tables(1.0, 1.0, 2.0 * M_PI);
  const Wavefunction exact1 = free_kramers_exact(psi1, 0.0, 1.0, tbl1);
  const double err1_fine = run_err(psi1, tbl1, exact1, smoke ? 1e-4 : 2.5e-5);

  // 2D at a gentler amplitude so the stated tolerance sits inside the
  // one-minute budget
  GridSpec g2{2, smoke ? 64 : 256, 16.0, {}};
  const PulseTables tbl2 = circular_tables(0.5, 1.0, 2.0 * M_PI);
  const Wavefunction psi2 = gaussian_state(g2, 1.0);
  const Wavefunction exact2 = free_kramers_exact(psi2, 0.0, 1.0, tbl2);
  const double err2 = run_err(psi2, tbl2, exact2, smoke ? 5e-4 : 1e-4);

  const double tol = smoke ? 1e-6 : 1e-8;
  const bool order_ok = std::abs(order1 - 2.0) <= 0.2 && std::abs(order2 - 2.0) <= 0.2;
  r.pass = order_ok && err1_fine < tol && err2 < tol;
  r.details = fmt("1D err %.3g, 2D err %.3g (tol %.1g); Strang orders %.3f %.3f",
                  err1_fine, err2, tol, order1, order2);
  return r;
}

// ---------------------------------------------------------------------
// C2: gauge equivalence, Kramers + bridge vs Ritz, refining (dt, h).

CriterionResult criterion_2(Scale scale) {
  CriterionResult r{2, "gauge equivalence (kramers + bridge vs ritz)", false, "", 0.0};
  const bool smoke = scale == Scale::smoke;
  const double lambda = 2.0, T = 1.0;
  const PulseTables tbl = linear_tables(lambda, T);

  // The soft core is held fixed across levels so both levels discretize
  // the same continuum problem. With Strang splitting the two gauges
  // are exactly conjugate for piecewise-linear A, so the residual is
  // the wrapped high-momentum scattering halo of the periodic box;
  // halving h therefore comes with a doubled box (n x4).
  auto level_diff = [&](int n, double L, double dt) {
    GridSpec g{2, n, L, {}};
    PotentialSpec pot{PotentialKind::coulomb, 1.0, 1.0, 1.0, 1.0, 0.4};
    const Wavefunction psi0 = gaussian_state(g, 1.0);
    EvolutionPlan plan;
    plan.t0 = 0.0;
    plan.t1 = T;
    plan.dt = dt;
    plan.gauge = Gauge::kramers;
    const Wavefunction pK = evolve_split(psi0, plan, tbl, pot).final;
    const Wavefunction pKb = gauge_bridge(pK, T, tbl, +1);
    plan.gauge = Gauge::ritz;
    const Wavefunction pR = evolve_split(psi0, plan, tbl, pot).final;
    return l2_diff(pKb, pR) / pR.norm();
  };

  const double d_coarse = smoke ? level_diff(64, 16.0, 2e-3) : level_diff(256, 16.0, 1e-3);
  const double d_fine = smoke ? level_diff(256, 32.0, 1e-3) : level_diff(1024, 32.0, 5e-4);
  const double ratio = d_coarse / d_fine;
  r.pass = d_coarse < 1e-3 && ratio >= 3.0;
  r.details =
      fmt("rel diff %.3g -> %.3g under (dt,h) -> (dt/2,h/2) [box doubled with h], "
          "ratio %.1f (need <1e-3, >=3)",
          d_coarse, d_fine, ratio);
  return r;
}

// ---------------------------------------------------------------------
// C3: kappa closed form for the linear pulse.

CriterionResult criterion_3(Scale) {
  CriterionResult r{3, "kappa_lambda closed form + brute-scan oracle", false, "", 0.0};
  const PulseTables tbl = linear_tables(1.0, 1.0);
  const double R = 1.0, T = 1.0;

  bool ok = true;
  std::string det;
  for (double lambda : {1e3, 1e4, 1e5}) {
    const KappaResult kr = kappa_lambda(tbl, R, T, lambda);
    const double s0c2 = (R / (T * lambda)) * (1.0 + std::sqrt(1.0 + 2.0 * T * lambda / R));
    const double s0_err = std::abs(kr.s0 * kr.s0 - s0c2);
    const double asym = (4.0 / 3.0) * std::pow(2.0 * std::pow(T, 3) /
                                                   (std::pow(R, 7) * lambda),
                                               0.25);
    const double asym_rel = std::abs(kr.value / asym - 1.0);

    // brute-force scan with the closed-form tail integral
    double kappa_scan = 1e300;
    const int N = 1000000;
    for (int i = 1; i < N; ++i) {
      const double s0 = double(i) / N;
      const double I = 2.0 * ((1.0 / s0 - 1.0) + (1.0 / (3.0 * s0 * s0 * s0) - 1.0 / 3.0));
      kappa_scan = std::min(kappa_scan, (T / (R * R)) * s0 + I / (R * lambda));
    }
    const double scan_rel = std::abs(kr.value - kappa_scan) / kappa_scan;

    ok = ok && s0_err <= 1e-8 && asym_rel <= 0.05 && scan_rel <= 1e-6;
    det += fmt("[l=%.0e s02err %.1e asym %.2f%% scan %.1e] ", lambda, s0_err,
               100.0 * asym_rel, scan_rel);
  }
  r.pass = ok;
  r.details = det + "(need 1e-8 / 5% / 1e-6)";
  return r;
}

// ---------------------------------------------------------------------
// C4: kappa scaling exponent -1/4.

CriterionResult criterion_4(Scale) {
  CriterionResult r{4, "kappa scaling exponent -0.25 +- 0.03", false, "", 0.0};
  const PulseTables tbl = linear_tables(1.0, 1.0);
  std::vector<double> lambdas, kappas;
  for (double e = 3.0; e <= 5.01; e += 0.5) {
    const double lambda = std::pow(10.0, e);
    lambdas.push_back(lambda);
    kappas.push_back(kappa_lambda(tbl, 1.0, 1.0, lambda).value);
  }
  const ScalingFit fit = fit_scaling(lambdas, kappas);
  r.pass = std::abs(fit.exponent + 0.25) <= 0.03;
  r.details = fmt("fitted exponent %.4f +- %.4f over lambda in [1e3, 1e5]",
                  fit.exponent, fit.stderr_);
  return r;
}

// ---------------------------------------------------------------------
// C5: FKS bound trend, measured pulse-window error vs the kappa bound.

CriterionResult criterion_5(Scale scale) {
  CriterionResult r{5, "FKS bound trend (||U - U0|| vs kappa bound)", false, "", 0.0};
  const bool smoke = scale == Scale::smoke;
  GridSpec g{1, smoke ? 1024 : 4096, 64.0, {}};
  const double T = 1.0, R = 1.0, V0 = 1.0, D = 1.0, alpha = 1.0;
  PotentialSpec pot{PotentialKind::short_range, V0, D, alpha, 0.0, 0.5 * g.h()};
  const Wavefunction psi0 = gaussian_state(g, R);
  const Wavefunction free_T = free_evolve(psi0, T);

  const std::vector<double> lambdas = {5.0, 10.0, 20.0, 40.0};
  std::vector<double> errs, kappas, bounds;
  for (double lambda : lambdas) {
    const PulseTables tbl = linear_tables(lambda, T);
    EvolutionPlan plan;
    plan.t0 = 0.0;
    plan.t1 = T;
    plan.dt = smoke ? 5e-4 : 2e-4;
    plan.frame = Frame::comoving;
    const Wavefunction tilde = evolve_split(psi0, plan, tbl, pot).final;
    errs.push_back(l2_diff(tilde, free_T));
    const double kap = kappa_lambda(tbl, R, T, lambda).value;
    kappas.push_back(kap);
    bounds.push_back(fks_bound(V0, D, R, T, kap));
  }
  double c_fit = 0.0;
  for (std::size_t i = 0; i < errs.size(); ++i) {
    c_fit = std::max(c_fit, errs[i] / bounds[i]);
  }
  bool dominated = true;
  for (std::size_t i = 0; i < errs.size(); ++i) {
    if (errs[i] > c_fit * bounds[i] * (1.0 + 1e-12)) dominated = false;
  }
  const double exp_err = fit_scaling(lambdas, errs).exponent;
  const double exp_kap = fit_scaling(lambdas, kappas).exponent;
  r.pass = dominated && std::abs(exp_err - exp_kap) <= 0.1;
  r.details = fmt(
      "1D: errs [%s], kappa exp %.3f, err exp %.3f (need +-0.1), fitted c %.3g",
      join_values(errs).c_str(), exp_kap, exp_err, c_fit);
  return r;
}

// ---------------------------------------------------------------------
// C6 + C7: ionization-into-cone monotonicity and ejection kinematics
// across a lambda ladder (shared sweep).

struct SweepPoint {
  double lambda = 0.0;
  double N_G = 0.0;
  double survival = 0.0;
  double angle = 0.0;
  Vec3 v_mean{};
  double align_angle = 0.0;  ///< angle between v_mean and F(1)
};

std::vector<SweepPoint> cone_sweep(Scale scale) {
  const bool smoke = scale == Scale::smoke;
  // L = 20 keeps the exp(-Z|x|/2) seed's tail below the containment
  // threshold in 2D
  GridSpec g{2, smoke ? 128 : 256, 20.0, {}};
  const double Z = 1.0, T = 1.0, theta = 0.2;
  const double soft = 0.5 * g.h();
  const Wavefunction& psi0 = cached_ground_state(g, Z, soft);
  PotentialSpec pot{PotentialKind::coulomb, 1.0, 1.0, 1.0, Z, soft};

  const std::vector<double> lambdas =
      smoke ? std::vector<double>{5.0, 20.0, 80.0}
            : std::vector<double>{5.0, 10.0, 20.0, 40.0, 80.0};
  std::vector<SweepPoint> points;
  for (double lambda : lambdas) {
    const PulseTables tbl = linear_tables(lambda, T);
    SweepPoint pt;
    pt.lambda = lambda;

    EvolutionPlan plan;
    plan.t0 = 0.0;
    plan.t1 = 5.0 * T;
    plan.dt = smoke ? 1.25e-3 : 6.25e-4;
    plan.frame = Frame::comoving;
    plan.absorber.enabled = true;
    plan.absorber.width = 2.0;
    plan.absorber.strength = 8.0 * lambda;  // departing flux crosses at ~2 lambda
    const Wavefunction tilde = evolve_split(psi0, plan, tbl, pot).final;

    ConeObservable cone;
    cone.delta = 0.1 * lambda * tbl.C_ass2;
    cone.theta = theta;
    cone.axis_mode = AxisMode::G_of_t;
    const Vec3 offset = (2.0 * lambda * T) * tbl.G_at(plan.t1 / T);
    pt.N_G = cone_norm(tilde, plan.t1, cone, tbl, offset);

    const EjectionKinematics kin = ejection_kinematics(tilde, tbl, T);
    pt.angle = kin.opening_angle;
    pt.v_mean = kin.mean_velocity;
    const double ca = kin.mean_velocity.dot(tbl.F1) /
                      (kin.mean_velocity.norm() * tbl.F1.norm());
    pt.align_angle = std::acos(std::clamp(ca, -1.0, 1.0));

    plan.frame = Frame::lab;
    const Wavefunction lab = evolve_split(psi0, plan, tbl, pot).final;
    pt.survival = survival_probability(lab, psi0);
    points.push_back(pt);
  }
  return points;
}

CriterionResult criterion_6(const std::vector<SweepPoint>& pts) {
  CriterionResult r{6, "cone-capture monotonicity, N > 0.9 at top rung", false, "", 0.0};
  std::vector<double> Ns, survs;
  for (const auto& p : pts) {
    Ns.push_back(p.N_G);
    survs.push_back(p.survival);
  }
  r.pass = strictly_increasing(Ns) && Ns.back() > 0.9 && strictly_decreasing(survs);
  r.details = fmt("N [%s], survival [%s]", join_values(Ns, "%.4f").c_str(),
                  join_values(survs, "%.2e").c_str());
  return r;
}

CriterionResult criterion_7(const std::vector<SweepPoint>& pts) {
  CriterionResult r{7, "ejection direction and opening-angle exponent", false, "", 0.0};
  std::vector<double> lambdas, angles;
  for (const auto& p : pts) {
    lambdas.push_back(p.lambda);
    angles.push_back(p.angle);
  }
  const ScalingFit fit = fit_scaling(lambdas, angles);
  const double align_top = pts.back().align_angle;
  r.pass = std::abs(fit.exponent + 1.0) <= 0.3 && align_top < 0.2;
  r.details = fmt("angle exponent %.3f +- %.3f (need -1 +- 0.3); top-rung velocity-F1 "
                  "angle %.4f rad (need < 0.2)",
                  fit.exponent, fit.stderr_, align_top);
  return r;
}

// ---------------------------------------------------------------------
// C8: Dollard approximation trend.

CriterionResult criterion_8(Scale scale) {
  CriterionResult r{8, "Dollard vs moving-center Coulomb, decreasing in lambda", false,
                    "", 0.0};
  const bool smoke = scale == Scale::smoke;
  GridSpec g{2, smoke ? 128 : 256, 24.0, {}};
  const double Z = 1.0, T = 1.0, R = 2.0, t = 3.0 * T;
  const double soft = 0.5 * g.h();
  const Wavefunction& psi0 = cached_ground_state(g, Z, soft);
  PotentialSpec pot{PotentialKind::coulomb, 1.0, 1.0, 1.0, Z, soft};

  std::vector<double> lambdas = {10.0, 20.0, 40.0}, diffs;
  for (double lambda : lambdas) {
    const PulseTables tbl = linear_tables(lambda, T);
    DollardSpec dspec;
    dspec.K0 = (R / T) * std::pow(R * lambda, 2.0 / 35.0);
    const CutoffResult cut = apply_cutoff(psi0, dspec);
    const Wavefunction psi_T = free_evolve(cut.psi, T);
    const Wavefunction exact =
        evolve_moving_center(psi_T, T, t, smoke ? 2e-3 : 1e-3, tbl, pot);
    const Wavefunction doll = dollard_propagate(psi_T, T, t, tbl, Z, dspec);
    diffs.push_back(l2_diff(exact, doll));
  }
  r.pass = strictly_decreasing(diffs);
  r.details = fmt("diffs [%s] over lambda [%s]", join_values(diffs).c_str(),
                  join_values(lambdas, "%.0f").c_str());
  return r;
}

// ---------------------------------------------------------------------
// C9: spreading bound W(t) <= a (t-T)/R + W(T).

CriterionResult criterion_9(Scale scale) {
  CriterionResult r{9, "spreading bound, linear envelope over [T, 10T]", false, "", 0.0};
  const bool smoke = scale == Scale::smoke;
  GridSpec g{2, smoke ? 256 : 512, 64.0, {}};
  const double Z = 1.0, T = 1.0, R = 2.0, lambda = 10.0;
  const PulseTables tbl = linear_tables(lambda, T);
  const Wavefunction psi0 = hydrogenic_ground_state(g, Z, 0.0);
  DollardSpec dspec;
  dspec.K0 = (R / T) * std::pow(R * lambda, 2.0 / 35.0);
  const Wavefunction psi_c = apply_cutoff(psi0, dspec).psi;

  std::vector<double> ts, Ws;
  for (double t = T; t <= 10.0 * T + 1e-9; t += 0.5 * T) {
    Wavefunction w = dollard_propagate(psi_c, T, t, tbl, Z, dspec);
    w = free_evolve(w, T);  // W is taken under e^{-i t p^2} over the full window
    ts.push_back(t);
    Ws.push_back(spreading(w));
  }
  const double W_T = Ws.front();
  double a = 0.0;
  for (std::size_t i = 1; i < ts.size(); ++i) {
    a = std::max(a, (Ws[i] - W_T) * R / (ts[i] - T));
  }
  int violations = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (Ws[i] > a * (ts[i] - T) / R + W_T + 1e-9) ++violations;
  }
  // growth rate is capped by the cutoff support: W' <= 2 K0
  const double a_cap = 2.0 * R * dspec.K0 * 1.05;
  r.pass = violations == 0 && a > 0.0 && a <= a_cap;
  r.details = fmt("W(T)=%.3f, fitted a=%.3f (cap %.3f), violations %d over %zu samples",
                  W_T, a, a_cap, violations, ts.size());
  return r;
}

// ---------------------------------------------------------------------
// C10: unitarity drift and bit-identical reruns.

CriterionResult criterion_10(Scale scale) {
  CriterionResult r{10, "unitarity drift + bit-identical reruns", false, "", 0.0};
  const bool smoke = scale == Scale::smoke;
  GridSpec g{2, 128, 8.0, {}};
  PotentialSpec pot{PotentialKind::coulomb, 1.0, 1.0, 1.0, 1.0, 0.5 * g.h()};
  const PulseTables tbl = linear_tables(1.0, 1.0);
  const Wavefunction psi0 = random_state(g, 42);
  EvolutionPlan plan;
  plan.t0 = 0.0;
  plan.t1 = smoke ? 1.0 : 10.0;  // 1e4 steps at desk scale
  plan.dt = 1e-3;
  const Trajectory t = evolve_split(psi0, plan, tbl, pot);
  const double drift = std::abs(t.final.norm() - psi0.norm());

  // identical config + seed -> identical bytes
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "sfi_verify_c10";
  std::error_code ec;
  fs::remove_all(base, ec);
  RunConfig cfg;
  cfg.phys.lambda = 2.0;
  cfg.grid = GridSpec{1, 256, 16.0, {}};
  cfg.initial_state = "gaussian";
  cfg.pot_kind = PotentialKind::coulomb;
  cfg.t_final = 0.5;
  cfg.dt = 1e-3;
  cfg.observable_stride = 100;
  cfg.seed = 7;
  auto read_bytes = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  // run twice into the same directory (stashing the first pass) so the
  // configs are identical byte for byte, then compare all outputs
  bool identical = true;
  cfg.out_dir = (base / "run").string();
  cmd_evolve(cfg);
  fs::create_directories(base / "first");
  for (const char* f : {"observables.csv", "bounds.json", "config.echo"}) {
    fs::copy_file(base / "run" / f, base / "first" / f,
                  fs::copy_options::overwrite_existing);
  }
  cmd_evolve(cfg);
  for (const char* f : {"observables.csv", "bounds.json", "config.echo"}) {
    if (read_bytes(base / "run" / f) != read_bytes(base / "first" / f)) {
      identical = false;
    }
  }
  fs::remove_all(base, ec);

  r.pass = drift < 1e-10 && identical;
  r.details = fmt("norm drift %.3g over %llu steps (need < 1e-10); reruns %s", drift,
                  static_cast<unsigned long long>(t.steps),
                  identical ? "bit-identical" : "DIFFER");
  return r;
}

}  // namespace

Scale scale_from_string(const std::string& s) {
  if (s == "smoke") return Scale::smoke;
  if (s == "desk") return Scale::desk;
  if (s == "full") return Scale::full;
  throw config_error("unknown scale '" + s + "' (smoke | desk | full)");
}

std::vector<CriterionResult> run_criteria(Scale scale, const std::vector<int>& ids) {
  auto wanted = [&](int id) {
    return ids.empty() || std::find(ids.begin(), ids.end(), id) != ids.end();
  };

  std::vector<CriterionResult> results;
  auto run = [&](int id, auto&& fn) {
    if (!wanted(id)) return;
    const double t0 = wall_now();
    CriterionResult res;
    try {
      res = fn();
    } catch (const std::exception& e) {
      res.id = id;
      res.name = "criterion " + std::to_string(id);
      res.pass = false;
      res.details = std::string("exception: ") + e.what();
    }
    res.seconds = wall_now() - t0;
    std::printf("[%s] C%d %s (%.1f s): %s\n", res.pass ? "PASS" : "FAIL", res.id,
                res.name.c_str(), res.seconds, res.details.c_str());
    std::fflush(stdout);
    results.push_back(res);
  };

  run(1, [&] { return criterion_1(scale); });
  run(2, [&] { return criterion_2(scale); });
  run(3, [&] { return criterion_3(scale); });
  run(4, [&] { return criterion_4(scale); });
  run(5, [&] { return criterion_5(scale); });
  if (wanted(6) || wanted(7)) {
    const double t0 = wall_now();
    std::vector<SweepPoint> pts;
    std::string sweep_err;
    try {
      pts = cone_sweep(scale);
    } catch (const std::exception& e) {
      sweep_err = e.what();
    }
    const double sweep_seconds = wall_now() - t0;
    auto emit = [&](int id, auto&& fn) {
      if (!wanted(id)) return;
      CriterionResult res;
      if (!sweep_err.empty()) {
        res.id = id;
        res.name = "criterion " + std::to_string(id);
        res.details = "sweep exception: " + sweep_err;
      } else {
        res = fn();
      }
      res.seconds = sweep_seconds;
      std::printf("[%s] C%d %s (%.1f s): %s\n", res.pass ? "PASS" : "FAIL", res.id,
                  res.name.c_str(), res.seconds, res.details.c_str());
      std::fflush(stdout);
      results.push_back(res);
    };
    emit(6, [&] { return criterion_6(pts); });
    emit(7, [&] { return criterion_7(pts); });
  }
  run(8, [&] { return criterion_8(scale); });
  run(9, [&] { return criterion_9(scale); });
  run(10, [&] { return criterion_10(scale); });
  return results;
}

std::string verdict_json(const std::vector<CriterionResult>& results, Scale scale) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["scale"] = scale == Scale::smoke ? "smoke" : (scale == Scale::desk ? "desk" : "full");
  nlohmann::json arr = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    arr.push_back({{"id", r.id},
                   {"name", r.name},
                   {"pass", r.pass},
                   {"details", r.details},
                   {"seconds", r.seconds}});
    all = all && r.pass;
  }
  j["criteria"] = arr;
  j["pass"] = all;
  return j.dump(2) + "\n";
}

int verdict_exit_code(const std::vector<CriterionResult>& results) {
  for (const auto& r : results) {
    if (!r.pass) return 1;
  }
  return 0;
}

}  // namespace sfi
