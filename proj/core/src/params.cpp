#include "sfi/params.hpp"

#include <cmath>
#include <limits>

#include "sfi/errors.hpp"

namespace sfi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite_positive(double v, const char* name) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw invalid_argument(std::string("params: ") + name +
                           " must be finite and > 0");
  }
}

}  // namespace

DimensionlessGroups DimensionlessGroups::compute(const PhysParams& p) {
  DimensionlessGroups g;
  g.RL = p.R * p.lambda;
  g.R2_over_T = p.R * p.R / p.T;
  g.Z_over_lambda = p.Z / p.lambda;
  const double K0 = p.K0 > 0.0 ? p.K0 : default_cutoff_K0(p);
  g.K0R = K0 * p.R;
  g.K0T_over_R = K0 * p.T / p.R;
  return g;
}

double default_cutoff_K0(const PhysParams& p, double C0) {
  return C0 * std::pow(p.R * p.lambda, 2.0 / 35.0) * p.R / p.T;
}

ValidationReport validate(const PhysParams& p, HypothesisSet set,
                          const ValidateOptions& opt) {
  require_finite_positive(p.lambda, "lambda");
  require_finite_positive(p.T, "T");
  require_finite_positive(p.R, "R");
  require_finite_positive(p.delta, "delta");
  if (!std::isfinite(p.theta) || p.theta <= 0.0 || p.theta >= M_PI / 2.0) {
    throw invalid_argument("params: theta must lie in (0, pi/2)");
  }
  if (set == HypothesisSet::coulomb) require_finite_positive(p.Z, "Z");
  if (set == HypothesisSet::short_range) {
    require_finite_positive(p.V0, "V0");
    require_finite_positive(p.D, "D");
    require_finite_positive(p.alpha, "alpha");
  }

  const bool cou = set == HypothesisSet::coulomb;
  const double K0 = p.K0 > 0.0 ? p.K0 : default_cutoff_K0(p);
  const double C = opt.band_C;
  const double c2 = opt.c_ass2;

  ValidationReport rep;
  rep.band_C = C;
  rep.c_ass2 = c2;

  auto row = [&](const char* name, bool required, double value, double lo,
                 double hi) {
    HypothesisRow r;
    r.name = name;
    r.required = required;
    r.value = value;
    r.lo = lo;
    r.hi = hi;
    r.pass = value >= lo && value <= hi;
    rep.rows.push_back(r);
  };

  // Fixed row order; `required` depends on the hypothesis set.
  row("R2_over_T in [1/C, C]", cou, p.R * p.R / p.T, 1.0 / C, C);
  row("Z <= lambda", cou, p.Z / p.lambda, 0.0, 1.0);
  row("K0 <= c_ass2*lambda/2", cou, K0, 0.0, c2 * p.lambda / 2.0);
  row("lambda*T >= R", cou, p.lambda * p.T / p.R, 1.0, kInf);
  row("delta < c_ass2*lambda", true, p.delta, 0.0,
      std::nexttoward(c2 * p.lambda, 0.0));

  rep.pass = true;
  for (const auto& r : rep.rows) {
    if (r.required && !r.pass) rep.pass = false;
  }
  return rep;
}

double keldysh(double Ip_eV, double I0_1e14Wcm2, double L_um) {
  if (!(Ip_eV > 0.0) || !(I0_1e14Wcm2 > 0.0) || !(L_um > 0.0)) {
    throw invalid_argument("keldysh: all arguments must be > 0");
  }
  return 0.33 * std::sqrt(Ip_eV / (I0_1e14Wcm2 * L_um * L_um));
}

}  // namespace sfi
