#include "sfi/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "sfi/errors.hpp"
#include "sfi/fourier.hpp"
#include "sfi/griditer.hpp"
#include "sfi/numerics.hpp"

namespace sfi {

namespace {

using cplx = std::complex<double>;

struct StepperConfig {
  // kinetic symbol: |k + A(t_mid)|^2 when kramers_kinetic, else k^2
  bool kramers_kinetic = false;
  // position term: V(x - center(t_mid)) [+ -E(t_mid).x if ritz_field]
  bool ritz_field = false;
  std::function<Vec3(double)> center;  // empty: static potential
  const PulseTables* tables = nullptr;
  const PotentialSpec* pot = nullptr;
};

Vec3 electric_field(const PulseTables& tables, double t) {
  const double T = tables.spec.T;
  return (tables.spec.lambda / T) * tables.f_at(t / T);
}

class SplitStepper {
 public:
  SplitStepper(const GridSpec& grid, const EvolutionPlan& plan, StepperConfig cfg)
      : g_(grid), plan_(plan), cfg_(std::move(cfg)) {
    n_ = g_.n;
    total_ = g_.size();
    norm_fix_ = 1.0 / double(total_);
    if (!cfg_.center && cfg_.pot) {
      Vstatic_.resize(total_);
      for_each_point(g_, [&](std::size_t flat, const int idx[3]) {
        Vstatic_[flat] = potential_eval(*cfg_.pot, grid_point_x(g_, idx));
      });
      pos_static_.resize(total_);
      for (std::size_t i = 0; i < total_; ++i) {
        pos_static_[i] = std::polar(1.0, -0.5 * plan_.dt * Vstatic_[i]);
      }
    }
    if (plan_.absorber.enabled) build_absorber();
  }

  void apply_position_half(std::vector<cplx>& v, double tm) {
    if (cfg_.center) {
      const Vec3 c = project_dim(cfg_.center(tm), g_.dim);
      const double a = -0.5 * plan_.dt;
      for_each_point(g_, [&](std::size_t flat, const int idx[3]) {
        v[flat] *= std::polar(1.0, a * potential_eval(*cfg_.pot, grid_point_x(g_, idx) - c));
      });
      return;
    }
    if (!pos_static_.empty()) {
      for (std::size_t i = 0; i < total_; ++i) v[i] *= pos_static_[i];
    }
    if (cfg_.ritz_field) {
      // extra factor exp(+i dt/2 E(tm).x), separable over axes
      const Vec3 E = electric_field(*cfg_.tables, tm);
      for (int d = 0; d < g_.dim; ++d) {
        axis_buf_[d].resize(n_);
        for (int i = 0; i < n_; ++i) {
          axis_buf_[d][i] = std::polar(1.0, 0.5 * plan_.dt * E[d] * g_.x(d, i));
        }
      }
      apply_axis_product(v);
    }
  }

  void apply_kinetic(std::vector<cplx>& v, double tm) {
    Vec3 A{};
    if (cfg_.kramers_kinetic) A = vector_potential(*cfg_.tables, tm);
    for (int d = 0; d < g_.dim; ++d) {
      axis_buf_[d].resize(n_);
      for (int i = 0; i < n_; ++i) {
        const double ka = g_.k(i) + A[d];
        axis_buf_[d][i] = std::polar(d == 0 ? norm_fix_ : 1.0, -plan_.dt * ka * ka);
      }
    }
    dft_forward(g_.dim, n_, v.data());
    apply_axis_product(v);
    dft_backward(g_.dim, n_, v.data());
  }

  void apply_absorber(std::vector<cplx>& v) {
    for_each_point(g_, [&](std::size_t flat, const int idx[3]) {
      double m = 1.0;
      for (int d = 0; d < g_.dim; ++d) m *= absorber_axis_[d][idx[d]];
      v[flat] *= m;
    });
  }

  double edge_mass(const std::vector<cplx>& v) const {
    const double w = std::max(absorber_width(), g_.L_box / 16.0);
    double mass = 0.0, meas = 1.0;
    for (int d = 0; d < g_.dim; ++d) meas *= g_.h();
    for_each_point(g_, [&](std::size_t flat, const int idx[3]) {
      for (int d = 0; d < g_.dim; ++d) {
        const double x = g_.x(d, idx[d]) - g_.center[d];
        if (g_.L_box - std::abs(x) < w) {
          mass += std::norm(v[flat]);
          return;
        }
      }
    });
    return mass * meas;
  }

  double absorber_width() const {
    return plan_.absorber.width > 0.0 ? plan_.absorber.width : g_.L_box / 8.0;
  }

  double potential_value(const Vec3& x, double t) const {
    if (!cfg_.pot) return 0.0;
    const Vec3 c = cfg_.center ? project_dim(cfg_.center(t), g_.dim) : Vec3{};
    double w = potential_eval(*cfg_.pot, x - c);
    if (cfg_.ritz_field) w -= electric_field(*cfg_.tables, t).dot(x);
    return w;
  }

  const GridSpec& grid() const { return g_; }
  bool kramers_kinetic() const { return cfg_.kramers_kinetic; }
  const StepperConfig& cfg() const { return cfg_; }

 private:
  void build_absorber() {
    const double w = absorber_width();
    if (w >= g_.L_box / 4.0) {
      throw invalid_argument("absorber: width must be below L_box/4");
    }
    for (int d = 0; d < g_.dim; ++d) {
      absorber_axis_[d].resize(n_);
      for (int i = 0; i < n_; ++i) {
        // distance to the nearer box face along this axis
        const double x = g_.x(d, i) - g_.center[d];
        const double dist = g_.L_box - std::abs(x);
        if (dist >= w) {
          absorber_axis_[d][i] = 1.0;
          continue;
        }
        const double rate =
            plan_.absorber.strength *
            std::pow(std::cos(0.5 * M_PI * dist / w), plan_.absorber.exponent);
        absorber_axis_[d][i] = std::exp(-plan_.dt * rate);
      }
    }
  }

  void apply_axis_product(std::vector<cplx>& v) {
    for_each_point(g_, [&](std::size_t flat, const int idx[3]) {
      cplx m = axis_buf_[0][idx[0]];
      for (int d = 1; d < g_.dim; ++d) m *= axis_buf_[d][idx[d]];
      v[flat] *= m;
    });
  }

  GridSpec g_;
  EvolutionPlan plan_;
  StepperConfig cfg_;
  int n_ = 0;
  std::size_t total_ = 0;
  double norm_fix_ = 1.0;
  std::vector<double> Vstatic_;
  std::vector<cplx> pos_static_;
  std::vector<cplx> axis_buf_[3];
  std::vector<double> absorber_axis_[3];
};

StepDiagnostics make_diag(const SplitStepper& st, const Wavefunction& psi, double t) {
  StepDiagnostics d;
  d.t = t;
  d.norm = psi.norm();
  d.centroid = centroid(psi);
  // kinetic part with the active symbol, potential sampled at t
  Wavefunction ph = to_momentum(psi);
  Vec3 A{};
  if (st.kramers_kinetic()) {
    A = project_dim(vector_potential(*st.cfg().tables, t), psi.grid.dim);
  }
  double kin = 0.0;
  for_each_point(ph.grid, [&](std::size_t flat, const int idx[3]) {
    Vec3 k{};
    for (int dd = 0; dd < ph.grid.dim; ++dd) k[dd] = ph.grid.k(idx[dd]);
    k += A;
    kin += std::norm(ph.v[flat]) * k.dot(k);
  });
  kin *= ph.measure();
  double pot = 0.0;
  for_each_point(psi.grid, [&](std::size_t flat, const int idx[3]) {
    pot += std::norm(psi.v[flat]) * st.potential_value(grid_point_x(psi.grid, idx), t);
  });
  pot *= psi.measure();
  d.energy = kin + pot;
  return d;
}

Trajectory run_split(const Wavefunction& psi0, const EvolutionPlan& plan,
                     StepperConfig cfg, const StepObserver& observer) {
  plan.validate(psi0.grid);
  if (psi0.repr != Repr::position) {
    throw invalid_argument("evolve_split: initial state must be in position repr");
  }
  const std::uint64_t nsteps =
      std::uint64_t(std::llround((plan.t1 - plan.t0) / plan.dt));

  SplitStepper st(psi0.grid, plan, std::move(cfg));
  Trajectory out;
  out.final = psi0;
  auto& v = out.final.v;

  out.diag.push_back(make_diag(st, out.final, plan.t0));
  if (observer) observer(plan.t0, out.final);

  for (std::uint64_t s = 0; s < nsteps; ++s) {
    const double t = plan.t0 + double(s) * plan.dt;
    const double tm = t + 0.5 * plan.dt;
    st.apply_position_half(v, tm);
    st.apply_kinetic(v, tm);
    st.apply_position_half(v, tm);
    if (plan.absorber.enabled) st.apply_absorber(v);

    double raw = 0.0;
    for (const auto& c : v) raw += std::norm(c);
    if (!std::isfinite(raw)) {
      throw numerical_abort("evolve_split: NaN detected at t = " +
                            std::to_string(t + plan.dt));
    }

    const bool last = s + 1 == nsteps;
    if (plan.diag_stride > 0 && ((s + 1) % std::uint64_t(plan.diag_stride) == 0 || last)) {
      out.diag.push_back(make_diag(st, out.final, t + plan.dt));
      if (st.cfg().ritz_field && st.edge_mass(v) > 1e-3) {
        throw numerical_abort("evolve_split: ritz-gauge state reached the box edge");
      }
    } else if (plan.diag_stride == 0 && last) {
      out.diag.push_back(make_diag(st, out.final, t + plan.dt));
    }
    if (plan.snapshot_stride > 0 &&
        ((s + 1) % std::uint64_t(plan.snapshot_stride) == 0 || last)) {
      out.snapshots.emplace_back(t + plan.dt, out.final);
    }
    if (observer && ((plan.diag_stride > 0 &&
                      (s + 1) % std::uint64_t(plan.diag_stride) == 0) ||
                     last)) {
      observer(t + plan.dt, out.final);
    }
  }
  out.steps = nsteps;
  return out;
}

}  // namespace

void EvolutionPlan::validate(const GridSpec& grid) const {
  grid.validate();
  if (!(dt > 0.0)) throw invalid_argument("plan: dt must be > 0");
  if (!(t1 >= t0)) throw invalid_argument("plan: t1 must be >= t0");
  const double steps = (t1 - t0) / dt;
  if (std::abs(steps - std::llround(steps)) > 1e-6 * std::max(1.0, steps)) {
    throw invalid_argument("plan: (t1-t0)/dt must be an integer");
  }
  if (absorber.enabled) {
    const double w = absorber.width > 0.0 ? absorber.width : grid.L_box / 8.0;
    if (w >= grid.L_box / 4.0) throw invalid_argument("plan: absorber width >= L_box/4");
  }
  if (gauge == Gauge::ritz && frame == Frame::comoving) {
    throw invalid_argument("plan: comoving frame is defined for the kramers gauge");
  }
}

Wavefunction free_kramers_exact(const Wavefunction& psi, double t0, double t1,
                                const PulseTables& tables, FreeKramersPath path,
                                double quad_tol) {
  if (t1 < t0) throw invalid_argument("free_kramers_exact: need t0 <= t1");
  const bool was_position = psi.repr == Repr::position;
  Wavefunction ph = was_position ? to_momentum(psi) : psi;
  const GridSpec& g = ph.grid;
  const double lam = tables.spec.lambda, T = tables.spec.T;

  if (path == FreeKramersPath::factorized) {
    const double phi = -adaptive_simpson(
        [&](double tau) {
          const Vec3 A = project_dim(lam * tables.F_at(tau / T), g.dim);
          return A.dot(A);
        },
        t0, t1, quad_tol);
    const Vec3 dG =
        project_dim(lam * T * (tables.G_at(t1 / T) - tables.G_at(t0 / T)), g.dim);
    const double dtt = t1 - t0;
    for_each_point(g, [&](std::size_t flat, const int idx[3]) {
      Vec3 k{};
      for (int d = 0; d < g.dim; ++d) k[d] = g.k(idx[d]);
      ph.v[flat] *= std::polar(1.0, phi - dtt * k.dot(k) - 2.0 * k.dot(dG));
    });
  } else {
    for_each_point(g, [&](std::size_t flat, const int idx[3]) {
      Vec3 k{};
      for (int d = 0; d < g.dim; ++d) k[d] = g.k(idx[d]);
      const double Q = adaptive_simpson(
          [&](double tau) {
            const Vec3 ka =
                project_dim(k + lam * tables.F_at(tau / T), g.dim);
            return ka.dot(ka);
          },
          t0, t1, quad_tol);
      ph.v[flat] *= std::polar(1.0, -Q);
    });
  }
  return was_position ? to_position(ph) : ph;
}

Trajectory evolve_split(const Wavefunction& psi, const EvolutionPlan& plan,
                        const PulseTables& tables, const PotentialSpec& pot,
                        const StepObserver& observer) {
  StepperConfig cfg;
  cfg.tables = &tables;
  cfg.pot = &pot;
  if (plan.frame == Frame::comoving) {
    const double lam = tables.spec.lambda, T = tables.spec.T;
    cfg.center = [&tables, lam, T](double t) {
      return (-2.0 * lam * T) * tables.G_at(t / T);
    };
  } else if (plan.gauge == Gauge::kramers) {
    cfg.kramers_kinetic = true;
  } else {
    cfg.ritz_field = true;
  }
  return run_split(psi, plan, std::move(cfg), observer);
}

Wavefunction free_evolve(const Wavefunction& psi, double t) {
  const bool was_position = psi.repr == Repr::position;
  Wavefunction ph = was_position ? to_momentum(psi) : psi;
  const GridSpec& g = ph.grid;
  for_each_point(g, [&](std::size_t flat, const int idx[3]) {
    Vec3 k{};
    for (int d = 0; d < g.dim; ++d) k[d] = g.k(idx[d]);
    ph.v[flat] *= std::polar(1.0, -t * k.dot(k));
  });
  return was_position ? to_position(ph) : ph;
}

Wavefunction post_pulse_coulomb(const Wavefunction& psi_T, double T, double t,
                                double dt, const PotentialSpec& pot) {
  if (t < T) throw invalid_argument("post_pulse_coulomb: need t >= T");
  if (t == T) return psi_T;
  EvolutionPlan plan;
  plan.t0 = T;
  plan.t1 = t;
  plan.dt = dt;
  StepperConfig cfg;
  cfg.pot = &pot;
  return run_split(psi_T, plan, std::move(cfg), {}).final;
}

Wavefunction evolve_moving_center(const Wavefunction& psi_T, double T, double t,
                                  double dt, const PulseTables& tables,
                                  const PotentialSpec& pot) {
  if (t < T) throw invalid_argument("evolve_moving_center: need t >= T");
  if (t == T) return psi_T;
  EvolutionPlan plan;
  plan.t0 = T;
  plan.t1 = t;
  plan.dt = dt;
  StepperConfig cfg;
  cfg.pot = &pot;
  cfg.tables = &tables;
  const double lam = tables.spec.lambda, Tp = tables.spec.T;
  cfg.center = [&tables, lam, Tp](double s) {
    return (2.0 * lam * Tp) * tables.G_at(s / Tp);
  };
  return run_split(psi_T, plan, std::move(cfg), {}).final;
}

Wavefunction gauge_bridge(const Wavefunction& psi, double t, const PulseTables& tables,
                          int sign) {
  if (psi.repr != Repr::position) {
    throw invalid_argument("gauge_bridge: need position repr");
  }
  const Vec3 A = vector_potential(tables, t);
  Wavefunction out = psi;
  const GridSpec& g = out.grid;
  for_each_point(g, [&](std::size_t flat, const int idx[3]) {
    out.v[flat] *= std::polar(1.0, double(sign) * A.dot(grid_point_x(g, idx)));
  });
  return out;
}

double cutoff_profile(double r) {
  if (r <= 0.5) return 1.0;
  if (r >= 1.0) return 0.0;
  const double u = 2.0 * r - 1.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

CutoffResult apply_cutoff(const Wavefunction& psi, const DollardSpec& dspec) {
  if (!(dspec.K0 > 0.0)) throw invalid_argument("apply_cutoff: K0 must be > 0");
  const bool was_position = psi.repr == Repr::position;
  Wavefunction ph = was_position ? to_momentum(psi) : psi;
  const double before = ph.norm2();
  const GridSpec& g = ph.grid;
  for_each_point(g, [&](std::size_t flat, const int idx[3]) {
    Vec3 k{};
    for (int d = 0; d < g.dim; ++d) k[d] = g.k(idx[d]);
    ph.v[flat] *= cutoff_profile(k.norm() / dspec.K0);
  });
  CutoffResult res;
  res.removed_mass = before - ph.norm2();
  res.psi = was_position ? to_position(ph) : std::move(ph);
  return res;
}

Wavefunction dollard_propagate(const Wavefunction& psi_T, double T, double t,
                               const PulseTables& tables, double Z,
                               const DollardSpec& dspec) {
  if (t < T) throw invalid_argument("dollard_propagate: need t >= T");
  const bool was_position = psi_T.repr == Repr::position;
  Wavefunction ph = was_position ? to_momentum(psi_T) : psi_T;
  const GridSpec& g = ph.grid;
  const double lam = tables.spec.lambda, Tp = tables.spec.T;
  const double dtt = t - T;
  const double floor = lam * Tp * tables.C_ass2 / 2.0;

  for_each_point(g, [&](std::size_t flat, const int idx[3]) {
    Vec3 k{};
    for (int d = 0; d < g.dim; ++d) k[d] = g.k(idx[d]);
    const double k2 = k.dot(k);
    double phase = -dtt * k2;
    // The Coulomb phase is only defined (and only needed) on the cutoff
    // support; beyond K0 the state is identically zero.
    if (k.norm() < dspec.K0 && ph.v[flat] != cplx{0.0, 0.0} && dtt > 0.0) {
      const double integral = adaptive_simpson(
          [&](double tau) {
            const Vec3 den_vec =
                2.0 * tau * k -
                project_dim((2.0 * lam * Tp) * tables.G_at(1.0 + tau / Tp), g.dim);
            const double den = den_vec.norm();
            if (den < floor) {
              throw numerical_abort(
                  "dollard_propagate: denominator below lambda*T*C_ass2/2; "
                  "cutoff hypothesis violated");
            }
            return 1.0 / den;
          },
          0.0, dtt, dspec.phase_quad_tol);
      phase += Z * integral;
    }
    ph.v[flat] *= std::polar(1.0, phase);
  });
  return was_position ? to_position(ph) : ph;
}

}  // namespace sfi
