#include <doctest.h>

#include <cmath>
#include <random>

#include "sfi/errors.hpp"
#include "sfi/potential.hpp"

using namespace sfi;

TEST_CASE("coulomb values") {
  PotentialSpec c{PotentialKind::coulomb, 1.0, 1.0, 1.0, 1.0, 0.0};
  CHECK(potential_eval(c, {2.0, 0.0, 0.0}) == doctest::Approx(-0.5));
  c.soft_a = 0.1;
  CHECK(potential_eval(c, {0.0, 0.0, 0.0}) == doctest::Approx(-10.0));
  c.soft_a = 0.0;
  CHECK_THROWS_AS(potential_eval(c, {0.0, 0.0, 0.0}), invalid_argument);
}

TEST_CASE("short-range profile at |x| = D") {
  for (double alpha : {0.5, 1.0, 2.0}) {
    PotentialSpec s{PotentialKind::short_range, 2.0, 1.5, alpha, 0.0, 0.0};
    const double got = potential_eval(s, {1.5, 0.0, 0.0});
    CHECK(got == doctest::Approx(-2.0 / std::pow(2.0, 0.5 * alpha)).epsilon(1e-14));
  }
}

TEST_CASE("eval_shifted reduces to eval and relocates the minimum") {
  PotentialSpec c{PotentialKind::coulomb, 1.0, 1.0, 1.0, 1.0, 0.0};
  CHECK(potential_eval_shifted(c, {4.0, 0.0, 0.0}, {2.0, 0.0, 0.0}) ==
        doctest::Approx(-0.5));
  CHECK(potential_eval_shifted(c, {3.0, -1.0, 2.0}, {0.0, 0.0, 0.0}) ==
        doctest::Approx(potential_eval(c, {3.0, -1.0, 2.0})));

  // argmin scan on a coarse grid: the shifted short-range profile bottoms
  // out at x = shift
  PotentialSpec s{PotentialKind::short_range, 1.0, 1.0, 1.0, 0.0, 0.3};
  const Vec3 shift{1.25, 0.0, 0.0};
  double best = 1e300, best_x = 0.0;
  for (double x = -4.0; x <= 4.0; x += 0.25) {
    const double v = potential_eval_shifted(s, {x, 0.0, 0.0}, shift);
    if (v < best) {
      best = v;
      best_x = x;
    }
  }
  CHECK(best_x == doctest::Approx(1.25).epsilon(1e-12));
}

TEST_CASE("radial symmetry under random rotations") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PotentialSpec s{PotentialKind::short_range, 1.0, 1.0, 1.3, 0.0, 0.05};
  for (int i = 0; i < 64; ++i) {
    Vec3 x{u(rng), u(rng), u(rng)};
    const double th = M_PI * u(rng);
    // rotation about z keeps |x| fixed
    const Vec3 xr{x.x * std::cos(th) - x.y * std::sin(th),
                  x.x * std::sin(th) + x.y * std::cos(th), x.z};
    CHECK(potential_eval(s, x) == doctest::Approx(potential_eval(s, xr)).epsilon(1e-12));
  }
}

TEST_CASE("soft-core converges to the bare potential") {
  // |V_a - V_0| <= Z a^2 / (2 |x|^3) for |x| >= 10 a (Taylor bound)
  const double Z = 2.0;
  for (double a : {0.01, 0.05, 0.1}) {
    PotentialSpec soft{PotentialKind::coulomb, 1.0, 1.0, 1.0, Z, a};
    PotentialSpec bare{PotentialKind::coulomb, 1.0, 1.0, 1.0, Z, 0.0};
    for (double r = 10.0 * a; r <= 100.0 * a; r *= 1.7) {
      const double d =
          std::abs(potential_eval(soft, {r, 0, 0}) - potential_eval(bare, {r, 0, 0}));
      CHECK(d <= Z * a * a / (2.0 * r * r * r) * (1.0 + 1e-12));
    }
  }
}
