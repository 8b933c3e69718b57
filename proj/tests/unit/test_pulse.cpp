#include <doctest.h>

#include <cmath>
#include <cstring>

#include "sfi/errors.hpp"
#include "sfi/pulse.hpp"

using namespace sfi;

namespace {

PulseSpec linear_spec(double lambda = 1.0, double T = 1.0, Vec3 eps = {1, 0, 0}) {
  PulseSpec ps;
  ps.family = PulseFamily::linear;
  ps.epsilon = eps;
  ps.lambda = lambda;
  ps.T = T;
  return ps;
}

PulseSpec circular_spec(double omega = 8.0 * M_PI) {
  PulseSpec ps;
  ps.family = PulseFamily::circular_modulated;
  ps.omega = omega;
  return ps;
}

Vec3 circular_f_ref(double omega, double s) {
  if (s < 0.0 || s > 1.0) return {};
  const double h = std::sin(M_PI * s) * std::sin(M_PI * s);
  return {h * std::cos(omega * (s - 0.5)), h * std::sin(omega * (s - 0.5)), 0.0};
}

// Independent oracle: fixed-grid composite Simpson. F(s) = int_0^s f and
// G(s) = int_0^s (s-u) f(u) du (Fubini), both on 2^17 panels.
Vec3 oracle_F(double omega, double s, int N = 1 << 17) {
  Vec3 acc{};
  const double h = s / N;
  for (int i = 0; i < N; ++i) {
    const double a = i * h, m = a + 0.5 * h, b = a + h;
    acc += (h / 6.0) * (circular_f_ref(omega, a) + 4.0 * circular_f_ref(omega, m) +
                        circular_f_ref(omega, b));
  }
  return acc;
}

Vec3 oracle_G(double omega, double s, int N = 1 << 17) {
  Vec3 acc{};
  const double h = s / N;
  auto w = [&](double u) { return (s - u) * circular_f_ref(omega, u); };
  for (int i = 0; i < N; ++i) {
    const double a = i * h, m = a + 0.5 * h, b = a + h;
    acc += (h / 6.0) * (w(a) + 4.0 * w(m) + w(b));
  }
  return acc;
}

}  // namespace

TEST_CASE("linear family closed forms") {
  const PulseTables t = build_tables(linear_spec());
  CHECK(t.F_at(0.5).x == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(t.G_at(0.5).x == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(t.F_at(2.0).x == doctest::Approx(1.0));
  CHECK(t.G_at(3.0).x == doctest::Approx(2.5));  // (s - 1/2) for s >= 1
  CHECK(t.F_at(-0.5).norm() == 0.0);
  CHECK(t.G_at(-0.5).norm() == 0.0);
}

TEST_CASE("vector potential endpoints") {
  PulseSpec ps = linear_spec(3.0, 2.0);
  const PulseTables t = build_tables(ps);
  CHECK(vector_potential(t, 4.0).x == doctest::Approx(3.0));   // t = 2T -> lambda eps
  CHECK(vector_potential(t, -1.0).norm() == 0.0);              // pulse not yet arrived
  CHECK(vector_potential(t, 1.0).x == doctest::Approx(1.5));   // t = T/2 -> lambda/2
}

TEST_CASE("circular tables match the composite-Simpson oracle") {
  const double omega = 8.0 * M_PI;
  const PulseTables t = build_tables(circular_spec(omega));
  for (double s : {0.25, 0.5, 0.75, 1.0}) {
    const Vec3 Fo = oracle_F(omega, s), Go = oracle_G(omega, s);
    CHECK((t.F_at(s) - Fo).norm() <= 1e-10);
    CHECK((t.G_at(s) - Go).norm() <= 1e-10);
  }
  // interpolated off-node values stay close to the oracle
  for (double s : {0.1234567, 0.666, 0.9871}) {
    CHECK((t.F_at(s) - oracle_F(omega, s)).norm() <= 1e-9);
    CHECK((t.G_at(s) - oracle_G(omega, s)).norm() <= 1e-9);
  }
}

TEST_CASE("affine tail identity holds to machine precision") {
  for (const PulseTables& t :
       {build_tables(linear_spec()), build_tables(circular_spec())}) {
    for (double s : {1.0, 1.5, 4.0, 117.0}) {
      const Vec3 resid = t.G_at(s) - (t.G1 + (s - 1.0) * t.F1);
      CHECK(resid.norm() <= 1e-14 * (1.0 + s));
    }
  }
}

TEST_CASE("linear-family tail growth inequality") {
  const PulseTables t = build_tables(linear_spec());
  const double G1 = t.G1.norm(), F1 = t.F1.norm();
  for (double s = 1.0; s <= 64.0; s *= 2.0) {
    const double lhs = t.G_at(s).dot(t.G_at(s));
    CHECK(lhs >= G1 * G1 + (s - 1.0) * (s - 1.0) * F1 * F1 - 1e-12);
  }
}

TEST_CASE("build_tables is pure (bit-identical tables)") {
  const PulseTables a = build_tables(circular_spec());
  const PulseTables b = build_tables(circular_spec());
  REQUIRE(a.G_nodes.size() == b.G_nodes.size());
  CHECK(std::memcmp(a.G_nodes.data(), b.G_nodes.data(),
                    a.G_nodes.size() * sizeof(Vec3)) == 0);
  CHECK(a.C_ass2 == b.C_ass2);
}

TEST_CASE("assumption certificate for the linear pulse") {
  const PulseTables t = build_tables(linear_spec());
  const AssumptionCertificate c = check_assumptions(t);
  CHECK(c.ass1_pass);
  CHECK(c.C_ass2 == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-12));
  CHECK(c.ass2_method == "closed_form");
  CHECK(c.ass0_verified_on_samples);
  REQUIRE(c.ass0_integrals.size() == 3);
  // int_{s0}^1 2/tau^2 dtau = 2 (1/s0 - 1)
  CHECK(c.ass0_integrals[0] == doctest::Approx(2.0 * (10.0 - 1.0)).epsilon(1e-6));
}

TEST_CASE("zero pulse fails ass1 without throwing") {
  const PulseTables t = build_tables(linear_spec(1.0, 1.0, {0, 0, 0}));
  const AssumptionCertificate c = check_assumptions(t);
  CHECK_FALSE(c.ass1_pass);
  CHECK(c.C_ass2 == 0.0);
  CHECK_FALSE(c.ass0_verified_on_samples);
  CHECK(t.F_at(0.7).norm() == 0.0);
  CHECK(t.G_at(0.7).norm() == 0.0);
}

TEST_CASE("inf-search certificate matches a dense-grid oracle") {
  // two-segment profile with F(1).G(1) < 0; the transverse component
  // keeps |G(s)| > 0 on the whole tail so the certified constant is
  // a genuine interior infimum
  PulseSpec ps;
  ps.family = PulseFamily::custom_sampled;
  const int m = 4096;
  for (int i = 0; i <= m; ++i) {
    const double s = double(i) / m;
    ps.sample_s.push_back(s);
    ps.sample_f.push_back({s < 0.5 ? 1.0 : -1.8, 0.1, 0.0});
  }
  const PulseTables t = build_tables(ps);
  REQUIRE(t.F1.dot(t.G1) < 0.0);
  const AssumptionCertificate c = check_assumptions(t);
  CHECK(c.ass2_method == "inf_search");

  double inf_oracle = 1e300;
  for (int i = 0; i <= 2000000; ++i) {
    const double s = 1.0 + 99.0 * double(i) / 2000000.0;
    inf_oracle = std::min(inf_oracle, (t.G1 + (s - 1.0) * t.F1).norm() / s);
  }
  CHECK(std::abs(c.C_ass2 - inf_oracle) <= 1e-6);
}

TEST_CASE("malformed custom samples are rejected") {
  PulseSpec ps;
  ps.family = PulseFamily::custom_sampled;
  ps.sample_s = {0.0, 0.5, 1.2};  // support leaves [0,1]
  ps.sample_f = {{1, 0, 0}, {1, 0, 0}, {1, 0, 0}};
  CHECK_THROWS_AS(build_tables(ps), invalid_argument);
  ps.sample_s = {0.5, 0.0, 1.0};  // not ascending
  CHECK_THROWS_AS(build_tables(ps), invalid_argument);
}
