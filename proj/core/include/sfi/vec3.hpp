#pragma once

#include <array>
#include <cmath>

namespace sfi {

/// Fixed 3-vector. Lower-dimensional runs use the leading components and
/// leave the rest at zero.
struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double a) const { return {a * x, a * y, a * z}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }

  constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
  constexpr bool operator==(const Vec3&) const = default;
};

inline constexpr Vec3 operator*(double a, const Vec3& v) { return v * a; }

/// Zeroes components beyond the grid dimension: a 1D/2D run couples only
/// to the pulse components living on its axes.
inline constexpr Vec3 project_dim(const Vec3& v, int dim) {
  return {v.x, dim > 1 ? v.y : 0.0, dim > 2 ? v.z : 0.0};
}

}  // namespace sfi
