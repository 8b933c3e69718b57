#include "sfi/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sfi/errors.hpp"

namespace sfi {

namespace {

double simpson(double fa, double fm, double fb, double h) {
  return (h / 6.0) * (fa + 4.0 * fm + fb);
}

// Relative floor keeps the recursion sane when the integral itself is
// huge (the kappa integrand grows like tau^-4 toward the bracket floor).
constexpr double kRelTol = 1e-12;

double adaptive_step(const std::function<double(double)>& f, double a, double b,
                     double fa, double fm, double fb, double whole, double tol,
                     int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  const double goal = std::max(tol, kRelTol * std::abs(left + right));
  if (depth <= 0 || std::abs(delta) <= 15.0 * goal) {
    return left + right + delta / 15.0;
  }
  return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = simpson(fa, fm, fb, b - a);
  return adaptive_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

double adaptive_simpson_geometric(const std::function<double(double)>& f, double a,
                                  double b, double tol) {
  if (!(a > 0.0) || !(b > a)) {
    if (a == b) return 0.0;
    throw invalid_argument("adaptive_simpson_geometric: need 0 < a < b");
  }
  // Panels [a, 2a], [2a, 4a], ... capped at b; per-panel tolerance split
  // geometrically so the total stays near tol.
  double total = 0.0;
  double lo = a;
  int panels = 0;
  while (lo < b) {
    const double hi = std::min(2.0 * lo, b);
    total += adaptive_simpson(f, lo, hi, tol / (2 << std::min(panels, 20)));
    lo = hi;
    ++panels;
  }
  return total;
}

GoldenResult golden_section_min(const std::function<double(double)>& f, double a,
                                double b, double xtol, int max_iter) {
  constexpr double invphi = 0.6180339887498949;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  int it = 0;
  while (b - a > xtol && it < max_iter) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
    ++it;
  }
  const double xm = 0.5 * (a + b);
  return {xm, f(xm), it};
}

LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw invalid_argument("linear_fit: need two or more samples");
  }
  const std::size_t n = xs.size();
  double xbar = 0.0, ybar = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    xbar += xs[i];
    ybar += ys[i];
  }
  xbar /= double(n);
  ybar /= double(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - xbar) * (xs[i] - xbar);
    sxy += (xs[i] - xbar) * (ys[i] - ybar);
  }
  if (sxx == 0.0) throw invalid_argument("linear_fit: degenerate abscissae");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += r * r;
  }
  fit.slope_stderr =
      n > 2 ? std::sqrt(ss_res / double(n - 2) / sxx) : 0.0;
  return fit;
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace sfi
