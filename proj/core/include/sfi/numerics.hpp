#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace sfi {

/// Adaptive composite Simpson on [a, b] to absolute tolerance `tol`.
/// Deterministic: pure function of (f, a, b, tol).
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 48);

/// Adaptive Simpson over a geometric panel decomposition of [a, b],
/// a > 0. Robust for integrands that blow up polynomially at the left
/// endpoint (the kappa integrand behaves like tau^-4 near zero).
double adaptive_simpson_geometric(const std::function<double(double)>& f, double a,
                                  double b, double tol);

struct GoldenResult {
  double x = 0.0;
  double f = 0.0;
  int iterations = 0;
};

/// Golden-section minimization of a unimodal f on [a, b] to an
/// x-tolerance `xtol`. Returns the bracket midpoint and value there.
GoldenResult golden_section_min(const std::function<double(double)>& f, double a,
                                double b, double xtol, int max_iter = 256);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};

/// Least-squares line through (xs, ys). Needs xs.size() >= 2.
LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys);

/// FNV-1a 64-bit hash, used for config fingerprints.
std::uint64_t fnv1a64(const void* data, std::size_t len);

}  // namespace sfi
