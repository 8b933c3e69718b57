#include <doctest.h>

#include <cmath>

#include "sfi/errors.hpp"
#include "sfi/numerics.hpp"

using namespace sfi;

TEST_CASE("adaptive simpson against closed forms") {
  CHECK(adaptive_simpson([](double x) { return x * x; }, 0.0, 1.0, 1e-12) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-12) ==
        doctest::Approx(2.0).epsilon(1e-12));
  // oscillatory: int_0^1 cos(40 x) = sin(40)/40
  CHECK(adaptive_simpson([](double x) { return std::cos(40.0 * x); }, 0.0, 1.0,
                         1e-12) == doctest::Approx(std::sin(40.0) / 40.0).epsilon(1e-10));
  CHECK(adaptive_simpson([](double) { return 1.0; }, 2.0, 2.0, 1e-12) == 0.0);
}

TEST_CASE("geometric panels handle steep left endpoints") {
  // int_a^1 t^-4 dt = (a^-3 - 1)/3, steep for small a
  const double a = 1e-5;
  const double got = adaptive_simpson_geometric(
      [](double t) { return 1.0 / (t * t * t * t); }, a, 1.0, 1e-10);
  const double want = (std::pow(a, -3.0) - 1.0) / 3.0;
  CHECK(got == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("golden section finds quadratic and asymmetric minima") {
  const auto q = golden_section_min([](double x) { return (x - 1.3) * (x - 1.3); }, 0.0,
                                    4.0, 1e-10);
  CHECK(q.x == doctest::Approx(1.3).epsilon(1e-8));
  // f(x) = x + 1/x has its minimum at x = 1
  const auto g =
      golden_section_min([](double x) { return x + 1.0 / x; }, 0.1, 10.0, 1e-10);
  CHECK(g.x == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("linear fit recovers exact lines and flags degenerate input") {
  std::vector<double> xs = {1.0, 2.0, 3.0, 4.0};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(2.5 - 0.75 * x);
  const LinearFit f = linear_fit(xs, ys);
  CHECK(f.slope == doctest::Approx(-0.75).epsilon(1e-14));
  CHECK(f.intercept == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(f.slope_stderr == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(linear_fit({1.0}, {2.0}), invalid_argument);
  CHECK_THROWS_AS(linear_fit({1.0, 1.0}, {2.0, 3.0}), invalid_argument);
}

TEST_CASE("fnv1a64 is stable and sensitive") {
  const char a[] = "abc";
  const char b[] = "abd";
  CHECK(fnv1a64(a, 3) == fnv1a64(a, 3));
  CHECK(fnv1a64(a, 3) != fnv1a64(b, 3));
}
