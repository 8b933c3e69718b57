#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "sfi/grid.hpp"
#include "sfi/potential.hpp"
#include "sfi/vec3.hpp"

namespace sfi {

enum class Repr { position, momentum };

/// Complex field over a GridSpec with an explicit representation flag.
/// L2 norms use the Riemann measure h^dim (position) or dk^dim
/// (momentum); the transform pair below is unitary between them.
struct Wavefunction {
  GridSpec grid;
  Repr repr = Repr::position;
  std::vector<std::complex<double>> v;

  double measure() const {
    double m = 1.0;
    for (int d = 0; d < grid.dim; ++d) m *= (repr == Repr::position ? grid.h() : grid.dk());
    return m;
  }
  double norm2() const;
  double norm() const { return std::sqrt(norm2()); }

  static Wavefunction zero(const GridSpec& g, Repr r = Repr::position);
};

Wavefunction to_momentum(const Wavefunction& psi);
Wavefunction to_position(const Wavefunction& psi);

std::complex<double> inner_product(const Wavefunction& a, const Wavefunction& b);
void normalize(Wavefunction& psi);

/// Mean position relative to the grid coordinates.
Vec3 centroid(const Wavefunction& psi);
/// <psi, |x|^2 psi> (raw inner product, taken about the origin).
double second_moment(const Wavefunction& psi);
Vec3 momentum_mean(const Wavefunction& psi);
/// Diagonal of the momentum covariance matrix.
Vec3 momentum_variance(const Wavefunction& psi);

/// Normalized exp(-Z|x|/2) for soft_a = 0; imaginary-time relaxed ground
/// state of the soft-core Coulomb Hamiltonian otherwise (converged when
/// the energy change per step drops below 1e-10).
struct RelaxInfo {
  std::uint64_t iterations = 0;
  double energy = 0.0;
  std::vector<double> energy_history;  ///< sampled every step
};
Wavefunction hydrogenic_ground_state(const GridSpec& grid, double Z, double soft_a,
                                     RelaxInfo* info = nullptr);

/// Normalized isotropic Gaussian, |psi|^2 ~ exp(-|x|^2/R^2):
/// <x^2> = dim R^2 / 2, momentum width 1/(R sqrt 2) per axis.
Wavefunction gaussian_state(const GridSpec& grid, double R);

/// Unit-norm field with iid complex Gaussian entries (Box-Muller over
/// mt19937_64, fully deterministic for a given seed).
Wavefunction random_state(const GridSpec& grid, std::uint64_t seed);

/// <k^2> + <V> for a unit-norm state; V sampled at the grid points.
double expectation_energy(const Wavefunction& psi, const PotentialSpec& pot);

struct DecayReport {
  double R_fit = 0.0;      ///< decay length of |psi| ~ exp(-|x|/R)
  double C_fit = 0.0;      ///< prefactor in (psi1) convention C R^{-3/2}
  double gamma_fit = 0.0;  ///< |psi_hat| ~ p^{-gamma}
  double gamma_lo = 0.0, gamma_hi = 0.0;  ///< split-band fits
  bool super_polynomial = false;
  bool sr_gamma_ok = false;        ///< gamma > 5/2 (or super-polynomial)
  bool cou_gamma4_compatible = false;  ///< |gamma - 4| <= 15%
};

DecayReport check_decay(const Wavefunction& psi);

/// Binary snapshot: 8-byte magic "SFIWAVE1", u32 dim, u32 n, f64 L_box,
/// f64 center[3], u8 repr, 7 pad bytes, then interleaved re/im 64-bit
/// little-endian floats in row-major order.
void write_wavefunction(const Wavefunction& psi, const std::string& path);
Wavefunction read_wavefunction(const std::string& path);

/// CSV slice along `axis` through the center plane: x, re, im, abs2.
void write_slice_csv(const Wavefunction& psi, int axis, const std::string& path);

}  // namespace sfi
