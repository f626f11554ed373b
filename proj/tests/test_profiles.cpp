#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "core/profile.hpp"

using utm::Profile;
using utm::Region;
using cplx = std::complex<double>;

namespace {

// Centered finite difference, accurate enough for 1e-7 comparisons away from
// the non-smooth window edges.
cplx numeric_derivative(const Profile& p, double x) {
  const double h = 1e-6;
  return (p(x + h) - p(x - h)) / (2.0 * h);
}

} // namespace

TEST_CASE("gaussian window values, support and truncation") {
  const Profile p = Profile::gaussian_window(-2.0, 0.4, Region::Left, 1.0, 1.5);

  // Interior values follow amp * exp(-((x-c)/w)^2).
  for (double x : {-3.4, -2.7, -2.0, -1.3, -0.6}) {
    const double expected = std::exp(-std::pow((x + 2.0) / 0.4, 2));
    CHECK(std::abs(p(x) - cplx(expected, 0.0)) < 1e-15);
  }

  // Hard truncation outside [center - R, center + R].
  CHECK(p(-3.51) == cplx(0.0, 0.0));
  CHECK(p(-0.49) == cplx(0.0, 0.0));
  CHECK(std::abs(p(-3.49)) > 0.0);

  // Support radius covers the window on the far side of the origin.
  CHECK(p.support_radius() >= 3.5);
  CHECK(p.support_radius() <= 3.5 + 1e-12);

  // Default window radius is six widths.
  const Profile q = Profile::gaussian_window(1.0, 0.5, Region::Right);
  CHECK(q(1.0 + 2.99) != cplx(0.0, 0.0));
  CHECK(q(1.0 + 3.01) == cplx(0.0, 0.0));
}

TEST_CASE("gaussian window derivative matches finite differences") {
  const Profile p = Profile::gaussian_window(0.8, 0.3, Region::Right, 2.5);
  for (double x : {0.2, 0.5, 0.8, 1.1, 1.6}) {
    CAPTURE(x);
    CHECK(std::abs(p.derivative(x) - numeric_derivative(p, x)) < 1e-6);
  }
  // Outside the window both the value and the derivative vanish.
  CHECK(p.derivative(5.0) == cplx(0.0, 0.0));
}

TEST_CASE("decaying exponential decays away from the interface") {
  const Profile left = Profile::decaying_exponential(2.0, Region::Left, 0.5);
  const Profile right = Profile::decaying_exponential(2.0, Region::Right, 0.5);

  // e^{rate*x} on the left: grows toward the interface, decays to -inf.
  CHECK(std::abs(left(-1.0) - cplx(0.5 * std::exp(-2.0), 0.0)) < 1e-15);
  CHECK(std::abs(left(0.0) - cplx(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(left(-10.0)) < std::abs(left(-1.0)));

  // e^{-rate*x} on the right, mirror image.
  CHECK(std::abs(right(1.0) - left(-1.0)) < 1e-16);
  CHECK(std::abs(right(0.0) - cplx(0.5, 0.0)) < 1e-15);

  for (double x : {0.1, 0.7, 2.3}) {
    CHECK(std::abs(right.derivative(x) - numeric_derivative(right, x)) < 1e-6);
    CHECK(std::abs(left.derivative(-x) - numeric_derivative(left, -x)) < 1e-6);
  }
}

TEST_CASE("sampled grid interpolates its nodes and vanishes outside") {
  std::vector<cplx> values = {{0.0, 0.0}, {1.0, -0.5}, {0.3, 0.2}, {-0.7, 0.1}, {0.0, 0.0}};
  const Profile p = Profile::sampled_grid(0.5, 0.25, values, Region::Right);

  for (std::size_t i = 0; i < values.size(); ++i) {
    const double x = 0.5 + 0.25 * static_cast<double>(i);
    CAPTURE(i);
    CHECK(std::abs(p(x) - values[i]) < 1e-14);
  }
  CHECK(p(0.49) == cplx(0.0, 0.0));
  CHECK(p(1.51) == cplx(0.0, 0.0));
  CHECK(p.support_radius() >= 1.5);

  // Amplitude scales every sample.
  const Profile p2 = Profile::sampled_grid(0.5, 0.25, values, Region::Right, 2.0);
  CHECK(std::abs(p2(0.75) - 2.0 * p(0.75)) < 1e-14);
}

TEST_CASE("zero profile is zero everywhere and flagged as such") {
  const Profile z = Profile::zero(Region::Left);
  CHECK(z.is_zero());
  CHECK(z(-1.0) == cplx(0.0, 0.0));
  CHECK(z(3.0) == cplx(0.0, 0.0));
  CHECK(z.derivative(0.2) == cplx(0.0, 0.0));
  CHECK(z.support_radius() == 0.0);

  CHECK_FALSE(Profile::gaussian_window(0.0, 1.0, Region::Left).is_zero());
}

TEST_CASE("amplitude scaling is uniform across families") {
  const Profile g1 = Profile::gaussian_window(1.0, 0.4, Region::Right, 1.0);
  const Profile g3 = Profile::gaussian_window(1.0, 0.4, Region::Right, -3.0);
  for (double x : {0.5, 1.0, 1.7}) {
    CHECK(std::abs(g3(x) + 3.0 * g1(x)) < 1e-15);
    CHECK(std::abs(g3.derivative(x) + 3.0 * g1.derivative(x)) < 1e-13);
  }
}
