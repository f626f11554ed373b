#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "core/massless.hpp"
#include "core/mesh.hpp"

using utm::Geometry;
using utm::InterfaceProblem;
using utm::Profile;
using utm::QueryPoint;
using utm::Region;
using cplx = std::complex<double>;

namespace {

InterfaceProblem halfline_problem() {
  InterfaceProblem p;
  p.geometry = {Geometry::Kind::HalfLine, 0.0, 1.0};
  p.initial[0][0] = Profile::gaussian_window(-2.0, 0.4, Region::Left, 1.0, 1.9);
  p.initial[1][0] = Profile::gaussian_window(-2.5, 0.35, Region::Left, -0.8, 2.0);
  p.initial[0][1] = Profile::gaussian_window(2.4, 0.3, Region::Right, 0.6, 1.7);
  p.initial[1][1] = Profile::gaussian_window(2.1, 0.4, Region::Right, 1.0, 1.9);
  return p;
}

InterfaceProblem finite_inject_problem() {
  InterfaceProblem p;
  p.geometry = {Geometry::Kind::FiniteInterval, 1.0, 3.0};
  p.initial[0][0] = Profile::gaussian_window(-0.5, 0.1, Region::Left, 1.0, 0.5);
  p.initial[1][0] = Profile::gaussian_window(-0.45, 0.09, Region::Left, 0.7, 0.45);
  p.initial[0][1] = Profile::gaussian_window(0.5, 0.1, Region::Right, -0.4, 0.5);
  p.initial[1][1] = Profile::gaussian_window(0.45, 0.09, Region::Right, 1.0, 0.45);
  p.boundary[0][0] = Profile::gaussian_window(1.0, 0.2, Region::Right, 0.7, 1.0);
  p.boundary[1][1] = Profile::gaussian_window(1.3, 0.25, Region::Right, 0.5, 1.25);
  return p;
}

} // namespace

TEST_CASE("massless evaluation recovers the initial data at t = 0") {
  const InterfaceProblem p = halfline_problem();
  for (double x : {-3.0, -2.0, -0.7, 0.0}) {
    CHECK(eval_massless(p, 1, {x, 0.0, 1}) == p.initial_profile(1, 1)(x));
    CHECK(eval_massless(p, 2, {x, 0.0, 1}) == p.initial_profile(2, 1)(x));
  }
  for (double x : {0.4, 2.1, 3.3}) {
    CHECK(eval_massless(p, 1, {x, 0.0, 2}) == p.initial_profile(1, 2)(x));
    CHECK(eval_massless(p, 2, {x, 0.0, 2}) == p.initial_profile(2, 2)(x));
  }
}

TEST_CASE("massless components transport along their characteristics") {
  const InterfaceProblem p = halfline_problem();
  // Dyadic coordinates keep x - t exact, so equality is bitwise.
  const cplx a = eval_massless(p, 1, {-1.75, 0.0, 1});
  const cplx b = eval_massless(p, 1, {-1.25, 0.5, 1});
  const cplx c = eval_massless(p, 1, {-0.75, 1.0, 1});
  CHECK(a != cplx(0.0, 0.0));
  CHECK(a == b);
  CHECK(b == c);
  // Component 2 carries x + t = const leftward, across the interface.
  const cplx d = eval_massless(p, 2, {2.125, 0.0, 2});
  const cplx e = eval_massless(p, 2, {1.25, 0.875, 2});
  CHECK(d != cplx(0.0, 0.0));
  CHECK(d == e);
}

TEST_CASE("massless interface is transparent and exactly continuous") {
  const InterfaceProblem p = halfline_problem();
  for (double t : {0.1, 0.45, 0.8}) {
    for (int c : {1, 2}) {
      const cplx left = eval_massless(p, c, {0.0, t, 1});
      const cplx right = eval_massless(p, c, {0.0, t, 2});
      CHECK(left == right); // continuity holds bitwise, not just within tolerance
    }
  }
  // A right-moving pulse from region 1 shows up in region 2 unchanged.
  const cplx upstream = p.initial_profile(1, 1)(-0.2);
  CHECK(upstream != cplx(0.0, 0.0));
  CHECK(eval_massless(p, 1, {0.3, 0.5, 2}) == upstream);
}

TEST_CASE("corner characteristics resolve to the stated tie-break branches") {
  // Make both sides of each tie carry different values so the branch choice
  // is observable.
  InterfaceProblem p;
  p.geometry = {Geometry::Kind::FiniteInterval, 1.0, 2.0};
  p.initial[0][0] = Profile::gaussian_window(-0.4, 0.3, Region::Left, 1.0, 2.0);
  p.initial[1][0] = Profile::gaussian_window(-0.4, 0.3, Region::Left, 2.0, 2.0);
  p.initial[0][1] = Profile::gaussian_window(0.4, 0.3, Region::Right, 3.0, 2.0);
  p.initial[1][1] = Profile::gaussian_window(0.4, 0.3, Region::Right, 4.0, 2.0);
  p.boundary[0][0] = Profile::gaussian_window(0.5, 0.4, Region::Right, 5.0, 2.0);
  p.boundary[1][1] = Profile::gaussian_window(0.5, 0.4, Region::Right, 6.0, 2.0);

  // u = x - t = 0: component 1 reads region-2 initial data.
  CHECK(eval_massless(p, 1, {0.0, 0.0, 1}) == p.initial_profile(1, 2)(0.0));
  CHECK(eval_massless(p, 1, {0.5, 0.5, 2}) == p.initial_profile(1, 2)(0.0));
  // u = x + t = 0: component 2 reads region-1 initial data.
  CHECK(eval_massless(p, 2, {-0.5, 0.5, 1}) == p.initial_profile(2, 1)(0.0));
  // u = x - t = -L: component 1 still reads the initial datum at the edge.
  CHECK(eval_massless(p, 1, {-0.5, 0.5, 1}) == p.initial_profile(1, 1)(-1.0));
  // Just past the corner the boundary datum takes over.
  const double eps = 1.0 / 1024.0;
  CHECK(eval_massless(p, 1, {-0.5, 0.5 + eps, 1}) == p.boundary_profile(1, 1)(eps));
  // Mirror image for component 2 at u = x + t = +L.
  CHECK(eval_massless(p, 2, {0.5, 0.5, 2}) == p.initial_profile(2, 2)(1.0));
  CHECK(eval_massless(p, 2, {0.5, 0.5 + eps, 2}) == p.boundary_profile(2, 2)(eps));
}

TEST_CASE("massless solution is causal in the data") {
  InterfaceProblem p = halfline_problem();
  const QueryPoint q{-1.0, 0.5, 1};
  const cplx before = eval_massless(p, 1, q);
  // Perturbing data the backward characteristic never touches changes
  // nothing: component 2 everywhere, and component 1 far upstream.
  p.initial[1][0] = Profile::gaussian_window(-1.5, 0.4, Region::Left, 9.0, 2.0);
  p.initial[1][1] = Profile::gaussian_window(1.5, 0.4, Region::Right, 9.0, 2.0);
  p.initial[0][0] = Profile::gaussian_window(-8.0, 0.4, Region::Left, 9.0, 1.9);
  CHECK(eval_massless(p, 1, q) == cplx(0.0, 0.0));
  // The original value came from the untouched part of the data.
  CHECK(before == halfline_problem().initial_profile(1, 1)(-1.5));
}

TEST_CASE("finite interval reduces to the half-line before waves reach the edges") {
  InterfaceProblem finite;
  finite.geometry = {Geometry::Kind::FiniteInterval, 4.0, 1.0};
  InterfaceProblem half;
  half.geometry = {Geometry::Kind::HalfLine, 0.0, 1.0};
  for (InterfaceProblem* p : {&finite, &half}) {
    p->initial[0][0] = Profile::gaussian_window(-1.5, 0.2, Region::Left, 1.0, 1.0);
    p->initial[1][0] = Profile::gaussian_window(-1.4, 0.2, Region::Left, 0.5, 1.0);
    p->initial[0][1] = Profile::gaussian_window(1.5, 0.2, Region::Right, -0.3, 1.0);
    p->initial[1][1] = Profile::gaussian_window(1.4, 0.2, Region::Right, 1.0, 1.0);
  }
  for (double t : {0.3, 0.7, 1.0}) {
    for (double x : {-2.4, -1.1, -0.2, 0.0, 0.9, 2.2}) {
      const int region = (x < 0.0) ? 1 : 2;
      for (int c : {1, 2}) {
        CHECK(eval_massless(finite, c, {x, t, region}) == eval_massless(half, c, {x, t, region}));
      }
    }
  }
}

TEST_CASE("massless boundary injection matches the characteristic mesh") {
  // Independent oracle for the boundary branches, including the sign of the
  // entry-time argument: any sign slip would misplace the injected pulses by
  // O(1) at these nodes.
  const InterfaceProblem p = finite_inject_problem();
  const double dx = 1.0 / 64.0;
  const auto ref = utm::solve_reference(p, dx, {0.75, 1.5, 3.0});
  double worst = 0.0;
  for (int c : {1, 2}) {
    for (double t : {0.75, 1.5, 3.0}) {
      for (int j = -64; j <= 64; j += 1) {
        const double x = dx * j;
        const int region = (x < 0.0) ? 1 : 2;
        const cplx mesh = ref.sample(c, region, x, t);
        const cplx exact = eval_massless(p, c, {x, t, region});
        worst = std::max(worst, std::abs(mesh - exact));
      }
    }
  }
  CHECK(worst <= 1e-12);

  // Spot identities for the injected branches.
  CHECK(eval_massless(p, 1, {-0.25, 2.0, 1}) == p.boundary_profile(1, 1)(2.0 + 0.25 - 1.0));
  CHECK(eval_massless(p, 2, {0.25, 2.0, 2}) == p.boundary_profile(2, 2)(0.25 + 2.0 - 1.0));
}

TEST_CASE("massless evaluation validates its arguments") {
  const InterfaceProblem p = halfline_problem();
  InterfaceProblem massive = p;
  massive.mass2 = 1.0;
  CHECK_THROWS_AS(eval_massless(massive, 1, {0.0, 0.1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(eval_massless(p, 3, {0.0, 0.1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(eval_massless(p, 1, QueryPoint{0.0, 0.1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(eval_massless(p, 1, {0.0, -0.1, 1}), std::domain_error);
  CHECK_THROWS_AS(eval_massless(p, 1, {0.0, 1.5, 1}), std::domain_error);
  CHECK_THROWS_AS(eval_massless(p, 1, {0.5, 0.1, 1}), std::domain_error);  // x > 0 in region 1
  CHECK_THROWS_AS(eval_massless(p, 1, {-0.5, 0.1, 2}), std::domain_error); // x < 0 in region 2

  const InterfaceProblem f = finite_inject_problem();
  CHECK_THROWS_AS(eval_massless(f, 1, {-1.25, 0.1, 1}), std::domain_error); // x < -L
  CHECK_THROWS_AS(eval_massless(f, 2, {1.25, 0.1, 2}), std::domain_error);  // x > +L
}
