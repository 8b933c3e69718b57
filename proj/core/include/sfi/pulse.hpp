#pragma once

#include <string>
#include <vector>

#include "sfi/vec3.hpp"

namespace sfi {

enum class PulseFamily { linear, circular_modulated, custom_sampled };

enum class PulseEnvelope { sin2 };

/// Dimensionless pulse profile f on s = t/T with supp f in [0,1], plus
/// the physical amplitude and duration. The electric field is
/// E(t) = (lambda/T) f(t/T) and the vector potential A(t) = lambda F(t/T).
struct PulseSpec {
  PulseFamily family = PulseFamily::linear;
  Vec3 epsilon{1.0, 0.0, 0.0};   ///< polarization (linear family)
  double omega = 8.0 * M_PI;     ///< carrier angular frequency (circular family)
  PulseEnvelope envelope = PulseEnvelope::sin2;
  std::vector<double> sample_s;  ///< custom_sampled: nodes in [0,1], ascending
  std::vector<Vec3> sample_f;    ///< custom_sampled: f at the nodes
  double lambda = 1.0;
  double T = 1.0;
};

/// f, F, G on the dimensionless time s with the affine tail handled
/// analytically: F(s) = F(1) and G(s) = G(1) + (s-1) F(1) for s >= 1,
/// both zero for s <= 0. Closed form for the linear family, sampled
/// tables with local cubic interpolation otherwise.
class PulseTables {
 public:
  PulseSpec spec;
  bool closed_form = false;
  double quad_tol = 1e-10;
  int n_grid = 4096;              ///< uniform panels on [0,1]
  std::vector<double> s_nodes;    ///< n_grid + 1 nodes
  std::vector<Vec3> f_nodes, F_nodes, G_nodes;
  Vec3 F1, G1;
  double C_ass2 = 0.0;            ///< certified constant in |G(s)| >= C s, s >= 1

  Vec3 f_at(double s) const;
  Vec3 F_at(double s) const;
  Vec3 G_at(double s) const;
};

struct BuildOptions {
  double quad_tol = 1e-10;
  int n_grid = 4096;
};

/// Tabulates F(s) = int f and G(s) = int F. Pure: identical spec and
/// options give bit-identical tables.
PulseTables build_tables(const PulseSpec& spec, const BuildOptions& opt = {});

/// A(t) = lambda F(t/T); zero before the pulse, constant after.
Vec3 vector_potential(const PulseTables& tables, double t);

struct AssumptionCertificate {
  double F1_norm = 0.0;
  bool ass1_pass = false;

  double C_ass2 = 0.0;
  std::string ass2_method;  ///< "closed_form" or "inf_search"

  /// (ass0) cannot be proved numerically; we evaluate
  /// int_{s0}^1 |G|^-1 dtau on a fixed ladder of s0 and report
  /// "verified-on-samples".
  std::vector<double> ass0_s0_ladder;
  std::vector<double> ass0_integrals;
  bool ass0_verified_on_samples = false;
};

AssumptionCertificate check_assumptions(const PulseTables& tables,
                                        double f1_tol = 1e-12);

/// Columns: s, f_x..z, F_x..z, G_x..z at the table nodes.
void write_pulse_csv(const PulseTables& tables, const std::string& path);

}  // namespace sfi
