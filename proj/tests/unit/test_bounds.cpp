#include <doctest.h>

#include <cmath>

#include "sfi/bounds.hpp"
#include "sfi/errors.hpp"

using namespace sfi;

namespace {

PulseTables make_linear(double lambda = 1.0, double T = 1.0) {
  PulseSpec ps;
  ps.family = PulseFamily::linear;
  ps.lambda = lambda;
  ps.T = T;
  return build_tables(ps);
}

/// Brute scan with the closed-form tail integral of the linear pulse:
/// I(s0) = 2 [(1/s0 - 1) + (1/(3 s0^3) - 1/3)].
double kappa_scan(double R, double T, double lambda, int N = 400000) {
  double best = 1e300;
  for (int i = 1; i < N; ++i) {
    const double s0 = double(i) / N;
    const double I =
        2.0 * ((1.0 / s0 - 1.0) + (1.0 / (3.0 * s0 * s0 * s0) - 1.0 / 3.0));
    best = std::min(best, (T / (R * R)) * s0 + I / (R * lambda));
  }
  return best;
}

}  // namespace

TEST_CASE("kappa matches the closed-form minimizer and brute scan") {
  const PulseTables tbl = make_linear();
  for (double lambda : {50.0, 1e3, 1e5}) {
    for (double R : {1.0, 2.0}) {
      const double T = 1.0;
      const KappaResult kr = kappa_lambda(tbl, R, T, lambda);
      if (lambda * T > 4.0 * R) {
        const double s0c2 =
            (R / (T * lambda)) * (1.0 + std::sqrt(1.0 + 2.0 * T * lambda / R));
        CHECK(kr.s0 * kr.s0 == doctest::Approx(s0c2).epsilon(1e-10));
      }
      CHECK(kr.value ==
            doctest::Approx(kappa_scan(R, T, lambda)).epsilon(1e-6));
    }
  }
}

TEST_CASE("kappa monotonicity in lambda and R") {
  const PulseTables tbl = make_linear();
  double prev = 1e300;
  for (double lambda = 5.0; lambda <= 5000.0; lambda *= 3.0) {
    const double k = kappa_lambda(tbl, 1.0, 1.0, lambda).value;
    CHECK(k <= prev + 1e-14);
    prev = k;
  }
  prev = 1e300;
  for (double R = 0.5; R <= 8.0; R *= 2.0) {
    const double k = kappa_lambda(tbl, R, 1.0, 100.0).value;
    CHECK(k <= prev + 1e-14);
    prev = k;
  }
}

TEST_CASE("kappa boundary regime and divergence error") {
  const PulseTables tbl = make_linear();
  // lambda T < 4 R: the infimum sits at s0 -> 1
  const KappaResult kr = kappa_lambda(tbl, 1.0, 1.0, 2.0);
  CHECK(kr.boundary);
  CHECK(kr.value == doctest::Approx(1.0).epsilon(1e-6));  // T / R^2

  // zero pulse: |G| vanishes, (ass0) violated
  PulseSpec zp;
  zp.family = PulseFamily::linear;
  zp.epsilon = {0, 0, 0};
  const PulseTables ztbl = build_tables(zp);
  CHECK_THROWS_AS(kappa_lambda(ztbl, 1.0, 1.0, 10.0), invalid_argument);
}

TEST_CASE("fks bound structure") {
  CHECK(fks_bound(1.0, 1.0, 1.0, 1.0, 0.0) == 0.0);
  // linear in V0 D
  const double b1 = fks_bound(1.0, 1.0, 2.0, 1.0, 0.3);
  const double b2 = fks_bound(2.0, 3.0, 2.0, 1.0, 0.3);
  CHECK(b2 / b1 == doctest::Approx(6.0).epsilon(1e-12));
  // shape factor (1 + R^4/T^2)
  CHECK(fks_bound(1.0, 1.0, 2.0, 1.0, 1.0) == doctest::Approx(2.0 * 17.0));
}

TEST_CASE("ionization bounds: limits, term ratios, vacuous flag") {
  const PulseTables tbl = make_linear();
  PhysParams p;
  p.T = 1.0;
  p.R = 1.0;
  p.Z = 1.0;
  p.V0 = 1.0;
  p.D = 1.0;
  p.alpha = 1.0;
  p.theta = 0.2;
  p.delta = 0.05;
  const double t = 10.0;

  // lambda -> infinity: both bounds approach 1 (the coulomb deficit
  // decays only like lambda^{-1/7})
  p.lambda = 1e16;
  CHECK(short_range_lower_bound(p, tbl, t).value == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(coulomb_lower_bound(p, tbl, t).value == doctest::Approx(1.0).epsilon(1e-2));

  // bounds never exceed 1
  for (double lambda : {1.0, 10.0, 100.0, 1e4}) {
    p.lambda = lambda;
    p.delta = 0.05;
    CHECK(short_range_lower_bound(p, tbl, t).value <= 1.0);
    CHECK(coulomb_lower_bound(p, tbl, t).value <= 1.0);
  }

  // two-point ratio test on each deficit term at lambda vs 2 lambda
  p.lambda = 100.0;
  p.delta = 1e-12;  // so the cone term scales cleanly as 1/lambda
  const IonizationBound sr1 = short_range_lower_bound(p, tbl, t);
  const IonizationBound cou1 = coulomb_lower_bound(p, tbl, t);
  p.lambda = 200.0;
  const IonizationBound sr2 = short_range_lower_bound(p, tbl, t);
  const IonizationBound cou2 = coulomb_lower_bound(p, tbl, t);
  CHECK(sr2.term_cone / sr1.term_cone == doctest::Approx(0.5).epsilon(1e-9));
  // short-range tail scales as lambda^{-(1+alpha)}
  CHECK(sr2.term_tail / sr1.term_tail ==
        doctest::Approx(std::pow(2.0, -2.0)).epsilon(1e-9));
  // kappa term tracks kappa itself
  const double kap1 = kappa_lambda(tbl, p.R, p.T, 100.0).value;
  const double kap2 = kappa_lambda(tbl, p.R, p.T, 200.0).value;
  CHECK(sr2.term_kappa / sr1.term_kappa == doctest::Approx(kap2 / kap1).epsilon(1e-9));
  // coulomb dollard-tail term scales as lambda^{-1/7}
  CHECK(cou2.term_tail / cou1.term_tail ==
        doctest::Approx(std::pow(2.0, -1.0 / 7.0)).epsilon(1e-9));

  // delta >= C_ass2 lambda: undefined, flagged vacuous
  p.lambda = 1.0;
  p.delta = 10.0;
  const IonizationBound vac = short_range_lower_bound(p, tbl, t);
  CHECK(vac.undefined);
  CHECK(vac.vacuous);
}

TEST_CASE("fit_scaling recovers exponents") {
  std::vector<double> xs, ys, flat;
  for (double x = 1.0; x <= 1024.0; x *= 2.0) {
    xs.push_back(x);
    ys.push_back(3.7 * std::pow(x, -1.75));
    flat.push_back(2.5);
  }
  const ScalingFit f = fit_scaling(xs, ys);
  CHECK(f.exponent == doctest::Approx(-1.75).epsilon(1e-12));
  CHECK(f.stderr_ == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(fit_scaling(xs, flat).exponent == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(fit_scaling({1.0, 2.0}, {1.0, -2.0}), invalid_argument);

  // kappa ladder for the linear pulse reproduces the -1/4 asymptotics
  const PulseTables tbl = make_linear();
  std::vector<double> lams, kaps;
  for (double lambda = 1e3; lambda <= 1e5 + 1.0; lambda *= 10.0) {
    lams.push_back(lambda);
    kaps.push_back(kappa_lambda(tbl, 1.0, 1.0, lambda).value);
  }
  CHECK(fit_scaling(lams, kaps).exponent == doctest::Approx(-0.25).epsilon(0.12));
}
