#pragma once

#include <cmath>
#include <cstddef>

#include "sfi/errors.hpp"
#include "sfi/vec3.hpp"

namespace sfi {

/// Uniform periodic Cartesian grid with n points per axis on
/// [center - L_box, center + L_box). Conjugate momentum grid has spacing
/// pi / L_box in the usual FFT ordering.
struct GridSpec {
  int dim = 1;
  int n = 256;
  double L_box = 10.0;
  Vec3 center{};

  double h() const { return 2.0 * L_box / n; }
  double dk() const { return M_PI / L_box; }
  std::size_t size() const {
    std::size_t s = 1;
    for (int d = 0; d < dim; ++d) s *= std::size_t(n);
    return s;
  }

  double x(int axis, int i) const { return center[axis] - L_box + i * h(); }
  /// Signed momentum of FFT bin i.
  double k(int i) const { return (i < n / 2 ? i : i - n) * dk(); }

  void validate() const {
    if (dim < 1 || dim > 3) throw invalid_argument("grid: dim must be 1, 2 or 3");
    if (n < 4 || (n & (n - 1)) != 0) {
      throw invalid_argument("grid: n must be a power of two >= 4");
    }
    if (!(L_box > 0.0)) throw invalid_argument("grid: L_box must be > 0");
  }

  bool operator==(const GridSpec&) const = default;
};

}  // namespace sfi
