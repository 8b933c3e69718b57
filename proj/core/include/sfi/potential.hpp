#pragma once

#include "sfi/vec3.hpp"

namespace sfi {

enum class PotentialKind { short_range, coulomb };

/// Static nuclear potential. The short-range profile adopts the bounding
/// envelope -V0 D / (|x| (1 + (|x|/D)^2)^{alpha/2}) as the concrete
/// attractive potential; coulomb is -Z/|x|. soft_a > 0 replaces |x| by
/// sqrt(|x|^2 + soft_a^2) for grid regularization (both kinds).
struct PotentialSpec {
  PotentialKind kind = PotentialKind::coulomb;
  double V0 = 1.0;
  double D = 1.0;
  double alpha = 1.0;
  double Z = 1.0;
  double soft_a = 0.0;
};

double potential_eval(const PotentialSpec& spec, const Vec3& x);

/// eval at x - shift; the moving-frame propagators use this.
double potential_eval_shifted(const PotentialSpec& spec, const Vec3& x,
                              const Vec3& shift);

}  // namespace sfi
