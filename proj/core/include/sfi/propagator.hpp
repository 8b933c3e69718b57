#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "sfi/potential.hpp"
#include "sfi/pulse.hpp"
#include "sfi/wavefunction.hpp"

namespace sfi {

// Gauge and frame conventions
// ---------------------------
// Velocity (Kramers) gauge here means H(t) = (p + A(t))^2 + V(x) with
// A(t) = lambda F(t/T). This is the partner of the length (Ritz) gauge
// H(t) = p^2 + V(x) - E(t).x under the gauge function Lambda = A(t).x:
// psi_ritz = e^{+i A.x} psi_kramers. A free packet started at rest
// drifts to +2 lambda T G(t/T), so the cone observable's G(t/T) axis
// points along the ejection direction.
//
// The comoving frame removes that drift: psi_tilde = e^{2ip.g(t)}
// e^{i eta(t)} psi_lab with g = int A and eta = int A^2, which evolves
// under p^2 + V(x + 2 lambda T G(t/T)). States stay near the origin
// while the potential sweeps away, which is what makes large-lambda
// runs fit on a desk-size grid.

enum class Gauge { kramers, ritz };
enum class Frame { lab, comoving };

/// Boundary absorber: each step multiplies by exp(-dt W(x)) with
/// W = strength * cos^exponent(pi dist / (2 width)) rising from the
/// strip's inner edge to the box face. Scaling the rate by dt makes the
/// absorbed optical depth independent of the step size; `strength`
/// should be of order (crossing momentum) x (crossing speed) to absorb
/// without acting as a hard reflecting wall.
struct AbsorberSpec {
  bool enabled = false;
  double width = 0.0;       ///< strip width; 0 picks L_box/8
  double exponent = 8.0;    ///< profile exponent
  double strength = 100.0;  ///< peak damping rate W at the box face
};

struct EvolutionPlan {
  double t0 = 0.0;
  double t1 = 1.0;
  double dt = 1e-3;
  Gauge gauge = Gauge::kramers;
  Frame frame = Frame::lab;
  AbsorberSpec absorber;
  int snapshot_stride = 0;  ///< 0: keep only the final state
  int diag_stride = 0;      ///< 0: diagnostics at first/last step only

  void validate(const GridSpec& grid) const;
};

struct StepDiagnostics {
  double t = 0.0;
  double norm = 0.0;
  double energy = 0.0;
  Vec3 centroid{};
};

struct Trajectory {
  Wavefunction final;
  std::vector<StepDiagnostics> diag;
  std::vector<std::pair<double, Wavefunction>> snapshots;
  std::uint64_t steps = 0;
};

/// Called every diag cadence with the current state; used by the harness
/// to stream observables without storing snapshots.
using StepObserver = std::function<void(double t, const Wavefunction&)>;

enum class FreeKramersPath { factorized, direct };

/// Exact propagator of H_0(t) = (p + A(t))^2: in momentum space the
/// factorized form multiplies by e^{i phi} e^{-i (t1-t0) k^2}
/// e^{-2i k . lambda T (G(t1/T) - G(t0/T))} with the scalar phase
/// phi = -int A^2 dtau by quadrature. The direct path instead evaluates
/// exp(-i int |k + A(tau)|^2 dtau) by per-k quadrature as an independent
/// cross-check of the same multiplier.
Wavefunction free_kramers_exact(const Wavefunction& psi, double t0, double t1,
                                const PulseTables& tables,
                                FreeKramersPath path = FreeKramersPath::factorized,
                                double quad_tol = 1e-12);

/// Strang split-step evolution. Lab frame: position factor V(x)
/// (plus -E(t).x in the Ritz gauge), kinetic factor (k + A(t_mid))^2
/// (Kramers) or k^2 (Ritz). Comoving frame: kinetic k^2 with the
/// potential sampled at x + 2 lambda T G(t_mid/T). Unitary without the
/// absorber; NaN detection aborts with diagnostics.
Trajectory evolve_split(const Wavefunction& psi, const EvolutionPlan& plan,
                        const PulseTables& tables, const PotentialSpec& pot,
                        const StepObserver& observer = {});

/// exp(-i t p^2), exact in momentum space.
Wavefunction free_evolve(const Wavefunction& psi, double t);

/// Static Coulomb evolution exp(-i (t-T) (p^2 + V)); the constant A(T)
/// is the caller's business via gauge_bridge.
Wavefunction post_pulse_coulomb(const Wavefunction& psi_T, double T, double t,
                                double dt, const PotentialSpec& pot);

/// Split-step evolution of p^2 + V(x - 2 lambda T G(s/T)) for s in
/// [T, t]: the moving-center form matching the Dollard comparison below.
Wavefunction evolve_moving_center(const Wavefunction& psi_T, double T, double t,
                                  double dt, const PulseTables& tables,
                                  const PotentialSpec& pot);

/// Multiplication by e^{+-i A(t).x}; maps Kramers-evolved states to
/// Ritz-evolved ones (+1) and back (-1).
Wavefunction gauge_bridge(const Wavefunction& psi, double t, const PulseTables& tables,
                          int sign = +1);

struct DollardSpec {
  double K0 = 1.0;
  double phase_quad_tol = 1e-8;
};

/// Smooth momentum cutoff profile: 1 on [0,1/2], 0 on [1,inf),
/// exp(1 - 1/(1-u^2)) with u = 2r-1 in between.
double cutoff_profile(double r);

struct CutoffResult {
  Wavefunction psi;
  double removed_mass = 0.0;  ///< |psi|^2 - |chi psi|^2
};

/// Momentum-space multiplication by chi(|k|/K0).
CutoffResult apply_cutoff(const Wavefunction& psi, const DollardSpec& dspec);

/// Dollard-modified free dynamics from T to t: per momentum grid point,
/// multiply by exp(i Z int_0^{t-T} dtau / |2 tau k - 2 lambda T
/// G(1+tau/T)|) with the integral by adaptive quadrature, then apply
/// e^{-i (t-T) k^2}. Aborts if the denominator drops below
/// lambda T C_ass2 / 2 anywhere on the cutoff support.
Wavefunction dollard_propagate(const Wavefunction& psi_T, double T, double t,
                               const PulseTables& tables, double Z,
                               const DollardSpec& dspec);

}  // namespace sfi
