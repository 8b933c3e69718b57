#pragma once

#include <string>
#include <vector>

namespace sfi {

/// Physical parameters in the convention m_el = 1/2, hbar = 1,
/// e = 1: the kinetic operator is p^2, the hydrogenic ground energy is
/// -Z^2/4, and [T] = [D] = [R] = length while [V0] = [lambda] = length^-1.
struct PhysParams {
  double lambda = 1.0;  ///< pulse amplitude [length^-1]
  double T = 1.0;       ///< pulse duration [length]
  double R = 1.0;       ///< wavefunction length scale [length]
  double Z = 1.0;       ///< nuclear charge, dimensionless
  double V0 = 1.0;      ///< short-range strength [length^-1]
  double D = 1.0;       ///< short-range scale [length]
  double alpha = 1.0;   ///< short-range decay exponent
  double delta = 0.1;   ///< cone speed threshold
  double theta = 0.2;   ///< cone half-angle [rad]
  double K0 = 0.0;      ///< momentum cutoff [length^-1]; 0 requests the default
};

struct DimensionlessGroups {
  double RL = 0.0;          ///< R * lambda
  double R2_over_T = 0.0;   ///< R^2 / T
  double Z_over_lambda = 0.0;
  double K0R = 0.0;
  double K0T_over_R = 0.0;

  static DimensionlessGroups compute(const PhysParams& p);
};

/// Default momentum cutoff, K0 T / R = C0 (R lambda)^{2/35}.
double default_cutoff_K0(const PhysParams& p, double C0 = 1.0);

enum class HypothesisSet { short_range, coulomb };

struct HypothesisRow {
  std::string name;
  bool required = false;
  double value = 0.0;
  double lo = 0.0;   ///< lower edge of the accepted band (-inf allowed)
  double hi = 0.0;   ///< upper edge of the accepted band (+inf allowed)
  bool pass = false;
};

struct ValidationReport {
  std::vector<HypothesisRow> rows;  // fixed order
  bool pass = false;
  double band_C = 0.0;    ///< band constant used for R^2/T
  double c_ass2 = 0.0;    ///< pulse constant used for the K0 and delta rows
};

struct ValidateOptions {
  /// The analytic bounds only assert existence of a constant C; the band
  /// R^2/T in [1/C, C] is checked with this configurable value.
  double band_C = 10.0;
  /// Certified (ass2) constant of the pulse in use. Defaults to the
  /// linear-pulse value min(|G(1)|, |F(1)|)/sqrt(2) = 1/(2 sqrt 2).
  double c_ass2 = 0.35355339059327373;
};

/// Checks the standing hypotheses of the chosen bound regime. Non-finite or
/// non-positive core parameters throw invalid_argument; hypothesis
/// failures are reported as rows, never thrown.
ValidationReport validate(const PhysParams& p, HypothesisSet set,
                          const ValidateOptions& opt = {});

/// Keldysh parameter for circular polarization,
/// gamma ~= 0.33 sqrt(Ip[eV] / (I0[1e14 W/cm^2] * L[um]^2)).
double keldysh(double Ip_eV, double I0_1e14Wcm2, double L_um);

}  // namespace sfi
