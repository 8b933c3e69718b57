#pragma once

#include "sfi/pulse.hpp"
#include "sfi/wavefunction.hpp"

namespace sfi {

enum class AxisMode { G_of_t, F1_fixed };

/// Cone-capture observable chi_{delta,theta}(t): indicator of
/// |x| >= delta t intersected with the cone of half-angle theta about
/// G(t/T) (or about F(1) in the asymptotic variant).
struct ConeObservable {
  double delta = 0.1;
  double theta = 0.2;
  AxisMode axis_mode = AxisMode::G_of_t;

  void validate() const;
};

/// N(t) = || chi_{delta,theta}(t) psi ||, masked L2 norm. `lab_offset`
/// shifts the mask argument: for comoving-frame states the lab position
/// is x + 2 lambda T G(t/T), so pass that drift as the offset.
double cone_norm(const Wavefunction& psi, double t, const ConeObservable& cone,
                 const PulseTables& tables, const Vec3& lab_offset = {});

/// |<psi_0, psi_t>|^2.
double survival_probability(const Wavefunction& psi_t, const Wavefunction& psi_0);

/// W(t) = <psi, x^2 psi>^{1/2}, second moment about the origin.
double spreading(const Wavefunction& psi_t);

struct EjectionKinematics {
  Vec3 mean_velocity{};   ///< 2 (<k> + A(T)), gauge-invariant convention
  double opening_angle = 0.0;  ///< atan(sigma_perp / |<p_parallel>|)
  double sigma_perp = 0.0;
  double p_parallel = 0.0;
};

/// Momentum-space kinematics of the ejected packet. The gauge bridge at
/// time T shifts momenta by A(T) = lambda F(1), so the reported mean
/// velocity is the physical one regardless of the evolution gauge.
EjectionKinematics ejection_kinematics(const Wavefunction& psi_t,
                                       const PulseTables& tables, double T);

}  // namespace sfi
