#include "sfi/observables.hpp"

#include <cmath>

#include "sfi/errors.hpp"
#include "sfi/griditer.hpp"

namespace sfi {

void ConeObservable::validate() const {
  if (!(delta > 0.0)) throw invalid_argument("cone: delta must be > 0");
  if (!(theta > 0.0) || !(theta < M_PI / 2.0)) {
    throw invalid_argument("cone: theta must lie in (0, pi/2)");
  }
}

double cone_norm(const Wavefunction& psi, double t, const ConeObservable& cone,
                 const PulseTables& tables, const Vec3& lab_offset) {
  cone.validate();
  if (psi.repr != Repr::position) throw invalid_argument("cone_norm: need position repr");
  if (!(t > 0.0)) throw invalid_argument("cone_norm: need t > 0");

  const Vec3 axis = project_dim(cone.axis_mode == AxisMode::G_of_t
                                    ? tables.G_at(t / tables.spec.T)
                                    : tables.F1,
                                psi.grid.dim);
  const double axis_norm = axis.norm();
  if (axis_norm == 0.0) throw invalid_argument("cone_norm: zero axis vector");

  const double cos_theta = std::cos(cone.theta);
  const double rmin = cone.delta * t;
  double captured = 0.0;
  for_each_point(psi.grid, [&](std::size_t flat, const int idx[3]) {
    Vec3 x = lab_offset;
    for (int d = 0; d < psi.grid.dim; ++d) x[d] += psi.grid.x(d, idx[d]);
    const double r = x.norm();
    if (r < rmin) return;
    if (x.dot(axis) < r * axis_norm * cos_theta) return;
    captured += std::norm(psi.v[flat]);
  });
  return std::sqrt(captured * psi.measure());
}

double survival_probability(const Wavefunction& psi_t, const Wavefunction& psi_0) {
  const std::complex<double> ov = inner_product(psi_0, psi_t);
  return std::norm(ov);
}

double spreading(const Wavefunction& psi_t) { return std::sqrt(second_moment(psi_t)); }

EjectionKinematics ejection_kinematics(const Wavefunction& psi_t,
                                       const PulseTables& tables, double T) {
  const Wavefunction ph = psi_t.repr == Repr::momentum ? psi_t : to_momentum(psi_t);
  const Vec3 A_T = project_dim(vector_potential(tables, T), ph.grid.dim);
  const Vec3 k_mean = momentum_mean(ph);
  const Vec3 p_phys = k_mean + A_T;

  const double p_norm = p_phys.norm();
  if (p_norm < 1e-12) {
    throw invalid_argument("ejection_kinematics: state at rest, angle undefined");
  }
  const Vec3 axis = p_phys * (1.0 / p_norm);

  // total variance transverse to the ejection axis
  double w = 0.0, var_total = 0.0, var_par = 0.0;
  for_each_point(ph.grid, [&](std::size_t flat, const int idx[3]) {
    const double a = std::norm(ph.v[flat]);
    Vec3 k{};
    for (int d = 0; d < ph.grid.dim; ++d) k[d] = ph.grid.k(idx[d]);
    const Vec3 dk = k - k_mean;
    var_total += a * dk.dot(dk);
    const double par = dk.dot(axis);
    var_par += a * par * par;
    w += a;
  });
  if (w == 0.0) throw invalid_argument("ejection_kinematics: zero field");
  var_total /= w;
  var_par /= w;

  EjectionKinematics out;
  out.mean_velocity = 2.0 * p_phys;
  out.sigma_perp = std::sqrt(std::max(0.0, var_total - var_par));
  out.p_parallel = p_norm;
  out.opening_angle = std::atan(out.sigma_perp / p_norm);
  return out;
}

}  // namespace sfi
