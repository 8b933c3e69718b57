#include <doctest.h>

#include <cmath>
#include <complex>

#include "sfi/errors.hpp"
#include "sfi/observables.hpp"
#include "sfi/propagator.hpp"
#include "sfi/pulse.hpp"
#include "sfi/wavefunction.hpp"

using namespace sfi;

namespace {

PulseTables make_linear(double lambda, double T = 1.0) {
  PulseSpec ps;
  ps.family = PulseFamily::linear;
  ps.lambda = lambda;
  ps.T = T;
  return build_tables(ps);
}

/// Gaussian packet centered at x0 (position representation).
Wavefunction packet_at(const GridSpec& g, const Vec3& x0, double R) {
  Wavefunction psi = Wavefunction::zero(g);
  std::size_t flat = 0;
  int idx[3] = {0, 0, 0};
  for (flat = 0; flat < g.size(); ++flat) {
    Vec3 x{};
    for (int d = 0; d < g.dim; ++d) x[d] = g.x(d, idx[d]);
    const Vec3 r = x - x0;
    psi.v[flat] = std::exp(-r.dot(r) / (2.0 * R * R));
    for (int d = g.dim - 1; d >= 0; --d) {
      if (++idx[d] < g.n) break;
      idx[d] = 0;
    }
  }
  normalize(psi);
  return psi;
}

}  // namespace

TEST_CASE("cone norm: empty, full and half-space limits") {
  GridSpec g{2, 256, 8.0, {}};
  const PulseTables tbl = make_linear(1.0);
  const Wavefunction centered = gaussian_state(g, 0.8);

  ConeObservable cone;
  cone.theta = 0.2;

  // delta t beyond the box: mask empty
  cone.delta = 100.0;
  CHECK(cone_norm(centered, 1.0, cone, tbl) == 0.0);

  // packet sitting on the axis at |x| = 2 delta t: mask captures it
  cone.delta = 1.0;
  cone.theta = 0.3;
  const Wavefunction packet = packet_at(g, {2.0, 0.0, 0.0}, 0.15);
  CHECK(cone_norm(packet, 1.0, cone, tbl) == doctest::Approx(1.0).epsilon(1e-3));
  cone.theta = 0.2;

  // half-space limit: theta -> pi/2, delta -> 0 recovers the G-positive
  // half-space mass (independent direct sum)
  cone.delta = 1e-9;
  cone.theta = M_PI / 2.0 - 1e-9;
  const Wavefunction off = packet_at(g, {0.9, 0.4, 0.0}, 0.7);
  const double N = cone_norm(off, 1.0, cone, tbl);
  // strictly positive half-plane: the x = 0 line fails the open cone
  // condition x.axis >= |x||axis| cos(theta) for theta just under pi/2
  double half_mass = 0.0;
  std::size_t flat = 0;
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j, ++flat) {
      if (g.x(0, i) > 0.0) half_mass += std::norm(off.v[flat]);
    }
  }
  half_mass *= off.measure();
  CHECK(N * N == doctest::Approx(half_mass).epsilon(1e-6));

  // zero axis vector is an error (t <= 0 would make G vanish)
  const PulseTables zero_tbl = make_linear(1.0, 1.0);
  ConeObservable c2;
  Wavefunction any = gaussian_state(g, 1.0);
  PulseSpec zp;
  zp.family = PulseFamily::linear;
  zp.epsilon = {0, 0, 0};
  const PulseTables ztbl = build_tables(zp);
  CHECK_THROWS_AS(cone_norm(any, 1.0, c2, ztbl), invalid_argument);
}

TEST_CASE("cone norm monotonicity in theta and delta") {
  GridSpec g{2, 128, 8.0, {}};
  const PulseTables tbl = make_linear(1.0);
  const Wavefunction psi = packet_at(g, {1.5, 0.7, 0.0}, 1.0);
  ConeObservable cone;
  cone.delta = 0.5;
  cone.theta = 0.2;
  const double base = cone_norm(psi, 1.0, cone, tbl);
  cone.theta = 0.4;  // wider cone never decreases N
  CHECK(cone_norm(psi, 1.0, cone, tbl) >= base);
  cone.theta = 0.2;
  cone.delta = 0.25;  // smaller delta never decreases N
  CHECK(cone_norm(psi, 1.0, cone, tbl) >= base);
  // and N never exceeds the total norm
  CHECK(base <= psi.norm() + 1e-12);
}

TEST_CASE("axis modes agree when G(t/T) has settled toward F(1)") {
  // circular pulse: G(t/T) and F1 differ at finite t but align as t grows
  // omega = 8 pi with the sin^2 envelope averages out (F(1) = 0); an
  // odd multiple of pi leaves a usable net kick
  PulseSpec ps;
  ps.family = PulseFamily::circular_modulated;
  ps.omega = 7.0 * M_PI;
  ps.lambda = 1.0;
  ps.T = 1.0;
  const PulseTables tbl = build_tables(ps);
  const double t = 1e3;
  const Vec3 Gt = tbl.G_at(t);
  const double angle = std::acos(
      std::min(1.0, Gt.dot(tbl.F1) / (Gt.norm() * tbl.F1.norm())));
  CHECK(angle < 0.1);  // 0.2 / 2 with theta = 0.2

  GridSpec g{2, 128, 8.0, {}};
  const Vec3 dir = tbl.F1 * (1.0 / tbl.F1.norm());
  const Wavefunction psi = packet_at(g, 3.0 * dir, 0.8);
  ConeObservable cg;
  cg.delta = 1e-3;
  cg.theta = 0.2;
  cg.axis_mode = AxisMode::G_of_t;
  ConeObservable cf;
  cf.delta = 1e-3;
  cf.theta = 0.1;  // theta / 2
  cf.axis_mode = AxisMode::F1_fixed;
  CHECK(cone_norm(psi, t, cg, tbl) >= cone_norm(psi, t, cf, tbl));
}

TEST_CASE("survival probability limits") {
  GridSpec g{2, 64, 20.0, {}};
  const double soft = 0.5 * g.h();
  const Wavefunction psi0 = hydrogenic_ground_state(g, 1.0, soft);
  CHECK(survival_probability(psi0, psi0) == doctest::Approx(1.0).epsilon(1e-10));

  // orthogonal state: odd reflection in x (the x = 0 line is zeroed so
  // the positive and negative half-plane contributions cancel exactly)
  Wavefunction odd = psi0;
  std::size_t flat = 0;
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j, ++flat) {
      if (g.x(0, i) < 0.0) odd.v[flat] *= -1.0;
      if (g.x(0, i) == 0.0) odd.v[flat] = 0.0;
    }
  }
  CHECK(survival_probability(odd, psi0) < 1e-8);
}

TEST_CASE("spreading: gaussian value and parallel-axis identity") {
  GridSpec g{2, 256, 16.0, {}};
  const double R = 1.2;
  const Wavefunction psi = gaussian_state(g, R);
  CHECK(spreading(psi) == doctest::Approx(std::sqrt(g.dim / 2.0) * R).epsilon(1e-8));

  // translate by v via the exact momentum phase: W^2 shifts by
  // |v|^2 + 2 v.<x>
  const Vec3 v{1.3, -0.6, 0.0};
  Wavefunction ph = to_momentum(psi);
  std::size_t flat = 0;
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j, ++flat) {
      ph.v[flat] *= std::polar(1.0, -(g.k(i) * v.x + g.k(j) * v.y));
    }
  }
  const Wavefunction moved = to_position(ph);
  const double W2 = second_moment(psi);
  const double W2_moved = second_moment(moved);
  const Vec3 xbar = centroid(psi);
  CHECK(W2_moved == doctest::Approx(W2 + v.dot(v) + 2.0 * v.dot(xbar)).epsilon(1e-7));
}

TEST_CASE("free spreading obeys a linear envelope") {
  GridSpec g{1, 1024, 128.0, {}};
  const double R = 1.0, T = 1.0;
  const Wavefunction psi_T = free_evolve(gaussian_state(g, R), T);
  const double W_T = spreading(psi_T);
  std::vector<double> slopes;
  for (double t = 2.0; t <= 10.0; t += 1.0) {
    const Wavefunction psi_t = free_evolve(gaussian_state(g, R), t);
    slopes.push_back((spreading(psi_t) - W_T) * R / (t - T));
  }
  const double a = *std::max_element(slopes.begin(), slopes.end());
  for (double t = 2.0; t <= 10.0; t += 0.5) {
    const Wavefunction psi_t = free_evolve(gaussian_state(g, R), t);
    CHECK(spreading(psi_t) <= a * (t - T) / R + W_T + 1e-9);
  }
}

TEST_CASE("ejection kinematics: plane wave, rest error, bridge shift") {
  GridSpec g{2, 128, 8.0, {}};
  const PulseTables tbl = make_linear(5.0);

  // pure plane wave along the axis: zero opening angle
  Wavefunction pw = Wavefunction::zero(g);
  const int jx = 7;
  std::size_t flat = 0;
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j, ++flat) {
      pw.v[flat] = std::polar(1.0, g.k(jx) * g.x(0, i));
    }
  }
  normalize(pw);
  const EjectionKinematics kin = ejection_kinematics(pw, tbl, 1.0);
  CHECK(kin.opening_angle == doctest::Approx(0.0).epsilon(1e-10));
  // gauge-invariant velocity: 2 (<k> + lambda F(1))
  CHECK(kin.mean_velocity.x == doctest::Approx(2.0 * (g.k(jx) + 5.0)).epsilon(1e-9));

  // state at rest with a null pulse: angle undefined
  PulseSpec zp;
  zp.family = PulseFamily::linear;
  zp.epsilon = {0, 0, 0};
  const PulseTables ztbl = build_tables(zp);
  const Wavefunction rest = gaussian_state(g, 1.0);
  CHECK_THROWS_AS(ejection_kinematics(rest, ztbl, 1.0), invalid_argument);
}
