#include "sfi/potential.hpp"

#include <cmath>

#include "sfi/errors.hpp"

namespace sfi {

double potential_eval(const PotentialSpec& spec, const Vec3& x) {
  const double r2 = x.dot(x);
  if (r2 == 0.0 && spec.soft_a == 0.0) {
    throw invalid_argument("potential: singular at x = 0 with soft_a = 0");
  }
  const double r = std::sqrt(r2 + spec.soft_a * spec.soft_a);
  switch (spec.kind) {
    case PotentialKind::coulomb:
      return -spec.Z / r;
    case PotentialKind::short_range: {
      const double u = r / spec.D;
      return -spec.V0 * spec.D / (r * std::pow(1.0 + u * u, 0.5 * spec.alpha));
    }
  }
  return 0.0;
}

double potential_eval_shifted(const PotentialSpec& spec, const Vec3& x,
                              const Vec3& shift) {
  return potential_eval(spec, x - shift);
}

}  // namespace sfi
