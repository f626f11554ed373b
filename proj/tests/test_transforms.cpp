#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "core/geometry.hpp"
#include "core/profile.hpp"
#include "core/quadrature.hpp"
#include "core/transforms.hpp"

using utm::Geometry;
using utm::Profile;
using utm::Region;
using cplx = std::complex<double>;

namespace {

const Geometry kHalf{Geometry::Kind::HalfLine, 0.0, 1.0};
const Geometry kFinite{Geometry::Kind::FiniteInterval, 2.0, 1.0};

/// Brute-force \int_a^b p(x) e^{-ikx} dx by adaptive quadrature.
cplx brute_transform(const Profile& p, double a, double b, double k) {
  return utm::adaptive_simpson(
      [&](double x) { return p(x) * std::polar(1.0, -k * x); }, a, b, 1e-12);
}

/// Integration window of a profile inside its region's domain.
void domain_of(const Profile& p, Region region, const Geometry& g, double& a, double& b) {
  const double r = p.support_radius() + 1.0;
  if (region == Region::Left) {
    a = g.finite() ? -g.L : -r;
    b = 0.0;
  } else {
    a = 0.0;
    b = g.finite() ? g.L : r;
  }
}

const double kProbeK[] = {0.0, 1.0, -1.0, 10.0, -10.0, 100.0, -100.0};

} // namespace

TEST_CASE("closed-form spatial transforms match brute-force quadrature") {
  struct Case {
    const char* name;
    Profile profile;
    Region region;
    Geometry geometry;
  };
  const Case cases[] = {
      {"gaussian left half-line", Profile::gaussian_window(-2.0, 0.4, Region::Left, 1.0, 1.9),
       Region::Left, kHalf},
      {"gaussian right half-line", Profile::gaussian_window(2.4, 0.3, Region::Right, -0.7, 1.7),
       Region::Right, kHalf},
      {"gaussian left finite", Profile::gaussian_window(-1.0, 0.25, Region::Left, 1.0, 0.9),
       Region::Left, kFinite},
      // Window spills past the domain edge: the transform must clip at -L.
      {"gaussian clipped at -L", Profile::gaussian_window(-1.8, 0.3, Region::Left, 1.0, 1.8),
       Region::Left, kFinite},
      {"decaying exponential left half-line",
       Profile::decaying_exponential(2.0, Region::Left, 0.8), Region::Left, kHalf},
      {"decaying exponential right half-line",
       Profile::decaying_exponential(1.5, Region::Right, 1.0), Region::Right, kHalf},
      {"decaying exponential left finite",
       Profile::decaying_exponential(1.0, Region::Left, 1.0), Region::Left, kFinite},
      {"sampled grid right half-line",
       Profile::sampled_grid(0.5, 0.25,
                             {{0.0, 0.0}, {1.0, -0.5}, {0.3, 0.2}, {-0.7, 0.1}, {0.0, 0.0}},
                             Region::Right, 1.3),
       Region::Right, kHalf},
  };

  for (const auto& c : cases) {
    double a, b;
    domain_of(c.profile, c.region, c.geometry, a, b);
    for (double k : kProbeK) {
      const cplx closed = utm::spatial_transform(c.profile, c.region, c.geometry, k);
      const cplx brute = brute_transform(c.profile, a, b, k);
      CAPTURE(c.name, k);
      CHECK(std::abs(closed - brute) < 1e-9);
    }
  }

  // The zero profile transforms to exactly zero.
  for (double k : kProbeK) {
    CHECK(utm::spatial_transform(Profile::zero(Region::Left), Region::Left, kHalf, k) ==
          cplx(0.0, 0.0));
  }
}

TEST_CASE("spatial transform is linear in the data") {
  const Profile base = Profile::gaussian_window(-1.2, 0.3, Region::Left, 1.0, 1.1);
  const Profile scaled = Profile::gaussian_window(-1.2, 0.3, Region::Left, -2.75, 1.1);
  for (double k : kProbeK) {
    const cplx a = utm::spatial_transform(base, Region::Left, kHalf, k);
    const cplx b = utm::spatial_transform(scaled, Region::Left, kHalf, k);
    CAPTURE(k);
    CHECK(std::abs(b + 2.75 * a) < 1e-10);
  }
}

TEST_CASE("real data gives conjugate-symmetric transforms") {
  const Profile p = Profile::gaussian_window(1.4, 0.5, Region::Right, 0.9);
  for (double k : {0.3, 2.0, 17.0, 240.0}) {
    const cplx plus = utm::spatial_transform(p, Region::Right, kHalf, k);
    const cplx minus = utm::spatial_transform(p, Region::Right, kHalf, -k);
    CAPTURE(k);
    CHECK(std::abs(minus - std::conj(plus)) < 1e-13);
    // reflected_transform is exactly the -k evaluation.
    CHECK(utm::reflected_transform(p, Region::Right, kHalf, k) == minus);
  }
}

TEST_CASE("transforms decay at large wavenumber under the stated envelope") {
  const Profile cases[] = {
      Profile::gaussian_window(-2.0, 0.4, Region::Left, 1.0, 1.9),
      Profile::decaying_exponential(2.0, Region::Left, 0.8),
      Profile::sampled_grid(-1.5, 0.25,
                            {{0.0, 0.0}, {1.0, -0.5}, {0.3, 0.2}, {-0.7, 0.1}, {0.0, 0.0}},
                            Region::Left, 1.0),
  };
  for (const Profile& p : cases) {
    double prev_env = utm::transform_envelope(p, 5.0);
    for (double k : {10.0, 100.0, 1000.0, 10000.0}) {
      const double env = utm::transform_envelope(p, k);
      CHECK(env <= prev_env * (1.0 + 1e-12)); // envelope is nonincreasing
      prev_env = env;
      for (double q : {k, 2.0 * k, 5.0 * k}) {
        const double mag = std::abs(utm::spatial_transform(p, Region::Left, kHalf, q));
        CAPTURE(k, q);
        // Upper bound with a 2% allowance for the asymptotic constants.
        CHECK(mag <= env * 1.02 + 1e-18);
      }
    }
    // Riemann-Lebesgue: far-field magnitudes sit far below the k=10 level.
    const double near = std::abs(utm::spatial_transform(p, Region::Left, kHalf, 10.0));
    const double far = std::abs(utm::spatial_transform(p, Region::Left, kHalf, 1.0e4));
    CHECK(far < near);
  }
}

TEST_CASE("time transforms match brute-force quadrature for oscillatory frequencies") {
  const Profile traces[] = {
      Profile::gaussian_window(0.75, 0.14, Region::Right, 0.25, 0.7),
      Profile::decaying_exponential(1.7, Region::Right, 0.6),
      Profile::sampled_grid(0.0, 0.1,
                            {{0.0, 0.0}, {0.2, 0.1}, {0.5, -0.3}, {0.1, 0.4}, {0.0, 0.2},
                             {0.0, 0.0}},
                            Region::Right, 1.0),
  };
  for (const Profile& f : traces) {
    for (double sigma : {0.0, 1.0, -3.5, 12.0}) {
      for (double t : {0.2, 0.5, 1.3}) {
        const cplx omega(0.0, sigma);
        const cplx closed = utm::time_transform(f, omega, t);
        const cplx brute = utm::adaptive_simpson(
            [&](double s) { return f(s) * std::exp(omega * s); }, 0.0, t, 1e-12);
        CAPTURE(sigma, t);
        CHECK(std::abs(closed - brute) < 1e-9);
      }
    }
  }
}

TEST_CASE("time transform magnitude is bounded by t times the trace maximum") {
  const Profile f = Profile::gaussian_window(0.5, 0.2, Region::Right, 0.9, 0.45);
  for (double sigma : {0.5, 4.0, 33.0}) {
    for (double t : {0.3, 1.0, 2.0}) {
      const double bound = t * 0.9; // |f| <= |amplitude|
      CHECK(std::abs(utm::time_transform(f, cplx(0.0, sigma), t)) <= bound * (1.0 + 1e-12));
    }
  }
  CHECK(utm::time_transform(Profile::zero(Region::Right), cplx(0.0, 3.0), 1.0) ==
        cplx(0.0, 0.0));
}

TEST_CASE("time transform handles general complex frequencies") {
  // Non-imaginary omega exercises the quadrature fallback for the window
  // family and the closed form for the exponential family; cross-check both
  // against a 64-node Gauss-Legendre evaluation (independent path).
  const double t = 0.8;
  std::vector<double> nodes, weights;
  utm::gauss_legendre(64, nodes, weights);
  const auto gl64 = [&](const Profile& f, cplx omega) {
    cplx total = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double s = 0.5 * t * (nodes[i] + 1.0);
      total += weights[i] * f(s) * std::exp(omega * s);
    }
    return total * (0.5 * t);
  };
  const cplx omega(0.6, -2.0);
  // The window covers all of [0, t] so both evaluation paths see a smooth
  // integrand and the Gauss-Legendre cross-check converges spectrally.
  const Profile g = Profile::gaussian_window(0.4, 0.15, Region::Right, 1.1, 0.6);
  const Profile e = Profile::decaying_exponential(2.2, Region::Right, 0.7);
  CHECK(std::abs(utm::time_transform(g, omega, t) - gl64(g, omega)) < 1e-10);
  CHECK(std::abs(utm::time_transform(e, omega, t) - gl64(e, omega)) < 1e-10);
}

TEST_CASE("spatial transform cache reproduces the direct evaluation") {
  const Profile p = Profile::gaussian_window(-2.0, 0.4, Region::Left, 1.0, 1.9);
  const utm::SpatialTransformCache cache(p, Region::Left, kHalf);
  for (double k : kProbeK) {
    const cplx direct = utm::spatial_transform(p, Region::Left, kHalf, k);
    const cplx first = cache(k);
    const cplx second = cache(k); // memoized path
    CHECK(first == direct);
    CHECK(second == first);
    CHECK(cache.reflected(k) == utm::spatial_transform(p, Region::Left, kHalf, -k));
  }
}
