#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "core/faddeeva.hpp"

using utm::faddeeva_w;
using utm::gaussian_erf_term;
using cplx = std::complex<double>;

namespace {

struct WCase {
  double re, im, wre, wim;
};

// Reference values computed with an independent double-precision
// implementation (scipy.special.wofz).
constexpr WCase kWCases[] = {
    {+0.0, +0.0, +1.0000000000000000e+00, +0.0000000000000000e+00},
    {+0.0, +1.0, +4.2758357615580700e-01, +0.0000000000000000e+00},
    {+1.0, +1.0, +3.0474420525691254e-01, +2.0821893820283160e-01},
    {-2.0, +0.5, +1.0335882374136668e-01, -2.8478588475009387e-01},
    {+3.0, +0.0, +1.2340980408667956e-04, +2.0115731703760037e-01},
    {-7.0, +0.1, +1.1883327469052385e-03, -8.1429970895348688e-02},
    {+0.001, +0.0, +9.9999900000050002e-01, +1.1283784148430353e-03},
    {+9.0, +9.0, +3.1439696818733986e-02, +3.1246243795783172e-02},
    {-30.0, +2.0, +1.2502716123336107e-03, -1.8733294380844760e-02},
    {+100.0, +0.0, +0.0000000000000000e+00, +5.6421779725941380e-03},
    {+5.6, +5.6, +5.0765684804224880e-02, +4.9963289395195842e-02},
    {+5.7, +5.7, +4.9862016728587651e-02, +4.9101066842918990e-02},
    {-7.9, +0.3, +2.7757198780217198e-03, -7.1894801775992223e-02},
    {-8.1, +0.3, +2.6372707954815115e-03, -7.0096434306693073e-02},
};

struct ECase {
  double u, v, ere, eim;
};

// Reference values for e^{-v^2} erf(u+iv) (scipy.special.erf).
constexpr ECase kECases[] = {
    {+0.50, +0.00, +5.2049987781304652e-01, +0.0000000000000000e+00},
    {+2.00, +1.00, +3.6920614051802786e-01, -4.1419568460263718e-03},
    {+0.00, +1.50, +0.0000000000000000e+00, +4.8322733014076907e-01},
    {+3.00, -2.00, +1.8296650678647327e-02, +2.1148563407882794e-07},
    {+0.25, +4.00, +1.2790430038511169e-01, -4.8451676621197128e-02},
    {+6.00, +10.00, +8.5109940376035979e-19, +1.1208532379155728e-17},
    {+1.00, -25.00, -2.4972336196358016e-03, -7.9176572358497614e-03},
    {-2.00, +1.00, -3.6920614051802786e-01, -4.1419568460263718e-03},
};

} // namespace

TEST_CASE("scaled complex error function matches reference values") {
  for (const auto& c : kWCases) {
    const cplx w = faddeeva_w({c.re, c.im});
    CAPTURE(c.re, c.im);
    CHECK(std::abs(w - cplx(c.wre, c.wim)) < 1e-12);
  }
}

TEST_CASE("scaled complex error function reflection symmetry") {
  // w(-conj(z)) = conj(w(z)) holds on the closed upper half-plane.
  for (double re : {0.3, 1.7, 4.0, 12.0}) {
    for (double im : {0.0, 0.4, 2.5, 9.0}) {
      const cplx a = faddeeva_w({re, im});
      const cplx b = faddeeva_w({-re, im});
      CHECK(std::abs(b - std::conj(a)) < 1e-13);
    }
  }
}

TEST_CASE("scaled complex error function bounded on the real axis") {
  for (double x = 0.0; x <= 50.0; x += 0.37) {
    const cplx w = faddeeva_w({x, 0.0});
    CHECK(std::abs(w) <= 1.0 + 1e-12);
    // Real part is exactly e^{-x^2} on the real axis.
    if (x < 5.0) {
      CHECK(std::abs(w.real() - std::exp(-x * x)) < 1e-12);
    }
  }
}

TEST_CASE("gaussian transform kernel matches reference values") {
  for (const auto& c : kECases) {
    const cplx e = gaussian_erf_term(c.u, c.v);
    CAPTURE(c.u, c.v);
    CHECK(std::abs(e - cplx(c.ere, c.eim)) < 1e-12);
  }
}

TEST_CASE("gaussian transform kernel properties") {
  // Odd symmetry E(-u,-v) = -E(u,v), and the real-argument case is erf.
  CHECK(std::abs(gaussian_erf_term(-0.8, -1.3) + gaussian_erf_term(0.8, 1.3)) < 1e-15);
  for (double u : {0.1, 0.9, 2.2}) {
    CHECK(std::abs(gaussian_erf_term(u, 0.0) - std::erf(u)) < 1e-13);
  }
  // Large |u| limit: E(u,v) -> e^{-v^2} for u -> +inf.
  CHECK(std::abs(gaussian_erf_term(30.0, 0.7) - std::exp(-0.49)) < 1e-12);
}
