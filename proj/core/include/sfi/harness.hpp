#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sfi/bounds.hpp"
#include "sfi/config.hpp"
#include "sfi/observables.hpp"
#include "sfi/propagator.hpp"
#include "sfi/wavefunction.hpp"

namespace sfi {

/// Config with every auto field resolved against the built pulse tables
/// and grid.
struct ResolvedSetup {
  PhysParams phys;
  PulseTables tables;
  AssumptionCertificate cert;
  PotentialSpec pot;
  bool pot_none = false;
  ConeObservable cone;
  GridSpec grid;
};

ResolvedSetup build_setup(const RunConfig& cfg);

Wavefunction build_initial_state(const RunConfig& cfg, const ResolvedSetup& setup,
                                 RelaxInfo* relax_info = nullptr);

/// One observables.csv row; nan marks observables that are undefined at
/// that time (zero cone axis, state at rest).
struct ObservableRow {
  double t = 0.0;
  double N_G = 0.0;
  double N_F1 = 0.0;
  double survival = 0.0;
  double W = 0.0;
  Vec3 v_mean{};
  double angle = 0.0;
};

struct TrajectoryResult {
  std::vector<ObservableRow> rows;
  std::vector<StepDiagnostics> diag;
  Wavefunction final;
  std::uint64_t steps = 0;
  double wall_seconds = 0.0;
};

/// Runs a single trajectory per the config, streaming observable rows at
/// the configured cadence. In the comoving frame the cone masks are
/// evaluated at the lab position x + 2 lambda T G(t/T); survival is the
/// overlap with the run's own initial state in the run's frame.
TrajectoryResult run_trajectory(const RunConfig& cfg, const ResolvedSetup& setup,
                                const Wavefunction& psi0);

void write_observables_csv(const std::vector<ObservableRow>& rows,
                           const std::string& path);

/// Full analytic bound report serialized to JSON with provenance.
std::string bound_report_json(const RunConfig& cfg, const ResolvedSetup& setup,
                              const BoundConstants& c = {});

// CLI entry points; return process exit codes (0 ok, 1 validation fail).
int cmd_validate(const RunConfig& cfg);
int cmd_bounds(const RunConfig& cfg);
int cmd_evolve(const RunConfig& cfg);
int cmd_sweep(const RunConfig& cfg);

}  // namespace sfi
