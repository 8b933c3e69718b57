#include <doctest.h>

#include <cmath>

#include "sfi/errors.hpp"
#include "sfi/params.hpp"

using namespace sfi;

TEST_CASE("validate passes comfortable coulomb parameters") {
  PhysParams p;
  p.lambda = 10.0;
  p.T = 1.0;
  p.R = 1.0;
  p.Z = 1.0;
  const ValidationReport rep = validate(p, HypothesisSet::coulomb);
  CHECK(rep.pass);
  // fixed row order
  REQUIRE(rep.rows.size() == 5);
  CHECK(rep.rows[0].name == "R2_over_T in [1/C, C]");
  CHECK(rep.rows[0].value == doctest::Approx(1.0));
  CHECK(rep.rows[1].value == doctest::Approx(0.1));  // Z / lambda
}

TEST_CASE("validate fails on Z > lambda") {
  PhysParams p;
  p.lambda = 1.0;
  p.Z = 5.0;
  p.delta = 0.01;
  const ValidationReport rep = validate(p, HypothesisSet::coulomb);
  CHECK_FALSE(rep.pass);
  bool z_row_failed = false;
  for (const auto& row : rep.rows) {
    if (row.name == "Z <= lambda") z_row_failed = !row.pass;
  }
  CHECK(z_row_failed);
}

TEST_CASE("degenerate core parameters are hard errors, not failures") {
  PhysParams p;
  p.lambda = 0.0;
  CHECK_THROWS_AS(validate(p, HypothesisSet::coulomb), invalid_argument);
  p.lambda = 1.0;
  p.theta = 2.0;  // outside (0, pi/2)
  CHECK_THROWS_AS(validate(p, HypothesisSet::short_range), invalid_argument);
}

TEST_CASE("validate is deterministic") {
  PhysParams p;
  p.lambda = 10.0;
  const ValidationReport a = validate(p, HypothesisSet::coulomb);
  const ValidationReport b = validate(p, HypothesisSet::coulomb);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].name == b.rows[i].name);
    CHECK(a.rows[i].value == b.rows[i].value);
  }
}

TEST_CASE("keldysh reproduces the experimental range") {
  // helium, 725 nm: the 0.33 prefactor is rounded, so allow 5%
  CHECK(keldysh(24.6, 3.5, 0.725) == doctest::Approx(1.21).epsilon(0.05));
  CHECK(keldysh(24.6, 2.3, 0.725) == doctest::Approx(1.49).epsilon(0.05));
  CHECK(keldysh(1.0, 1.0, 1.0) == doctest::Approx(0.33).epsilon(1e-12));
  CHECK_THROWS_AS(keldysh(-1.0, 1.0, 1.0), invalid_argument);
  CHECK_THROWS_AS(keldysh(1.0, 0.0, 1.0), invalid_argument);
}

TEST_CASE("keldysh monotonicity") {
  double prev = keldysh(10.0, 1.0, 1.0);
  for (double I0 : {2.0, 4.0, 8.0}) {
    const double g = keldysh(10.0, I0, 1.0);
    CHECK(g < prev);
    prev = g;
  }
  prev = keldysh(10.0, 1.0, 1.0);
  for (double L : {2.0, 4.0}) {
    const double g = keldysh(10.0, 1.0, L);
    CHECK(g < prev);
    prev = g;
  }
  prev = keldysh(1.0, 1.0, 1.0);
  for (double Ip : {2.0, 4.0}) {
    const double g = keldysh(Ip, 1.0, 1.0);
    CHECK(g > prev);
    prev = g;
  }
}

TEST_CASE("dimensionless groups and the default cutoff") {
  PhysParams p;
  p.lambda = 10.0;
  p.T = 2.0;
  p.R = 1.5;
  p.Z = 0.5;
  const DimensionlessGroups g = DimensionlessGroups::compute(p);
  CHECK(g.RL == doctest::Approx(15.0));
  CHECK(g.R2_over_T == doctest::Approx(1.125));
  CHECK(g.Z_over_lambda == doctest::Approx(0.05));
  // K0 T / R = (R lambda)^{2/35}
  CHECK(g.K0T_over_R == doctest::Approx(std::pow(15.0, 2.0 / 35.0)));
  CHECK(std::isfinite(g.K0R));
}
