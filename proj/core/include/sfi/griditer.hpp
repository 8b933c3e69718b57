#pragma once

#include "sfi/grid.hpp"
#include "sfi/vec3.hpp"

namespace sfi {

/// Row-major iteration over the grid, handing each flat index its
/// per-axis integer coordinates.
template <typename F>
void for_each_point(const GridSpec& g, F&& f) {
  const int n = g.n;
  int idx[3] = {0, 0, 0};
  const std::size_t total = g.size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    f(flat, idx);
    for (int d = g.dim - 1; d >= 0; --d) {
      if (++idx[d] < n) break;
      idx[d] = 0;
    }
  }
}

inline Vec3 grid_point_x(const GridSpec& g, const int idx[3]) {
  Vec3 x{};
  for (int d = 0; d < g.dim; ++d) x[d] = g.x(d, idx[d]);
  return x;
}

inline Vec3 grid_point_k(const GridSpec& g, const int idx[3]) {
  Vec3 k{};
  for (int d = 0; d < g.dim; ++d) k[d] = g.k(idx[d]);
  return k;
}

}  // namespace sfi
