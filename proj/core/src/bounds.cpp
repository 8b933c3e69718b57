#include "sfi/bounds.hpp"

#include <cmath>
#include <limits>

#include "sfi/errors.hpp"
#include "sfi/numerics.hpp"

namespace sfi {

namespace {

double g_norm_guarded(const PulseTables& tables, double tau, bool* divergent) {
  const double g = tables.G_at(tau).norm();
  if (g < 1e-14) {
    *divergent = true;
    return 1e-14;
  }
  return g;
}

}  // namespace

KappaResult kappa_lambda(const PulseTables& tables, double R, double T, double lambda,
                         const KappaOptions& opt) {
  if (!(R > 0.0) || !(T > 0.0) || !(lambda > 0.0)) {
    throw invalid_argument("kappa_lambda: R, T, lambda must be > 0");
  }
  bool divergent = false;
  auto integrand = [&](double tau) {
    const double g = g_norm_guarded(tables, tau, &divergent);
    return (1.0 + 1.0 / (tau * tau)) / g;
  };
  auto tail_integral = [&](double s0) {
    return adaptive_simpson_geometric(integrand, s0, 1.0, opt.quad_tol);
  };
  auto objective = [&](double s0) {
    return (T / (R * R)) * s0 + tail_integral(s0) / (R * lambda);
  };
  // derivative of the objective, exact by Leibniz
  auto dobjective = [&](double s0) {
    return T / (R * R) - integrand(s0) / (R * lambda);
  };

  const double lo = opt.bracket_floor;
  const double hi = 1.0 - 1e-12;

  // quick divergence probe: (ass0) violated iff the tail integral blows
  // up at every s0
  if (tail_integral(0.5) > 1e14 || divergent) {
    throw invalid_argument("kappa_lambda: |G|^-1 not integrable, (ass0) violated");
  }

  KappaResult res;
  if (dobjective(hi) <= 0.0) {
    // objective still decreasing at s0 -> 1: boundary infimum
    res.s0 = hi;
    res.value = objective(hi);
    res.boundary = true;
    return res;
  }

  // golden section in log s0, then derivative bisection to machine
  // precision inside the localized bracket
  auto log_obj = [&](double u) { return objective(std::exp(u)); };
  const GoldenResult g = golden_section_min(log_obj, std::log(lo), std::log(hi), 1e-3);
  double a = std::exp(g.x - 2e-3), b = std::exp(g.x + 2e-3);
  a = std::max(a, lo);
  b = std::min(b, hi);
  // widen until the derivative changes sign across [a, b]
  while (dobjective(a) > 0.0 && a > lo) a = std::max(lo, a * 0.5);
  while (dobjective(b) < 0.0 && b < hi) b = std::min(hi, b * 1.5);
  if (dobjective(a) > 0.0 || dobjective(b) < 0.0) {
    res.s0 = std::exp(g.x);  // fall back to the golden result
    res.value = objective(res.s0);
    return res;
  }
  for (int i = 0; i < 200 && (b - a) > 1e-16 * b; ++i) {
    const double m = 0.5 * (a + b);
    (dobjective(m) < 0.0 ? a : b) = m;
  }
  res.s0 = 0.5 * (a + b);
  res.value = objective(res.s0);
  if (divergent) {
    throw invalid_argument("kappa_lambda: |G| vanished inside the integration range");
  }
  return res;
}

double fks_bound(double V0, double D, double R, double T, double kappa, double C) {
  return C * V0 * D * R * (1.0 + std::pow(R, 4) / (T * T)) * kappa;
}

namespace {

IonizationBound ionization_bound_common(const PhysParams& p, const PulseTables& tables,
                                  double t, const BoundConstants& c,
                                  const KappaOptions& kopt, bool coulomb) {
  if (!(t > 0.0)) throw invalid_argument("lower bound: need t > 0");
  IonizationBound b;
  b.constants = c;
  const KappaResult kr = kappa_lambda(tables, p.R, p.T, p.lambda, kopt);
  b.kappa = kr.value;
  b.kappa_s0 = kr.s0;

  const double C_ass2 = tables.C_ass2;
  const double R = p.R, T = p.T, lam = p.lambda;
  const double shape = 1.0 + std::pow(R, 4) / (T * T);

  if (C_ass2 * lam <= p.delta) {
    b.undefined = true;
    b.vacuous = true;
    b.value = -std::numeric_limits<double>::infinity();
    return b;
  }
  b.term_cone = c.C1 *
                (1.0 / (R * (C_ass2 * lam - p.delta)) +
                 1.0 / (R * lam * std::tan(p.theta))) *
                (1.0 + R * R / t);
  if (coulomb) {
    b.term_kappa = c.C2 * p.Z * R * shape * kr.value;
    b.term_tail = c.C3 * std::pow(R * lam, -1.0 / 7.0) *
                  std::pow(p.Z * std::pow(T, 1.5) / (R * R), 4.0 / 7.0);
  } else {
    b.term_tail = c.C2 * p.V0 * T /
                  (p.alpha * std::pow(lam * T / p.D, 1.0 + p.alpha)) * shape;
    b.term_kappa = c.C3 * p.V0 * p.D * R * shape * kr.value;
  }
  b.value = 1.0 - b.term_cone - b.term_tail - b.term_kappa;
  b.vacuous = b.value <= 0.0;
  return b;
}

}  // namespace

IonizationBound short_range_lower_bound(const PhysParams& p, const PulseTables& tables,
                                double t, const BoundConstants& c,
                                const KappaOptions& kopt) {
  return ionization_bound_common(p, tables, t, c, kopt, false);
}

IonizationBound coulomb_lower_bound(const PhysParams& p, const PulseTables& tables,
                                 double t, const BoundConstants& c,
                                 const KappaOptions& kopt) {
  return ionization_bound_common(p, tables, t, c, kopt, true);
}

ScalingFit fit_scaling(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw invalid_argument("fit_scaling: need two or more samples");
  }
  std::vector<double> lx, ly;
  lx.reserve(xs.size());
  ly.reserve(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
      throw invalid_argument("fit_scaling: samples must be positive");
    }
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
  }
  const LinearFit f = linear_fit(lx, ly);
  ScalingFit out;
  out.exponent = f.slope;
  out.stderr_ = f.slope_stderr;
  out.log_amplitude = f.intercept;
  return out;
}

}  // namespace sfi
