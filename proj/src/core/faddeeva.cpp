#include "core/faddeeva.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace utm {
namespace {

constexpr int kWeidemanN = 64;

/// Coefficients of Weideman's rational approximation, computed once from the
/// real DFT of samples of e^{-t^2} on the tangent-mapped grid.
struct WeidemanTable {
  double L = 0.0;
  std::array<double, kWeidemanN> a{};

  WeidemanTable() {
    const int N = kWeidemanN;
    const int M = 2 * N;
    const int M2 = 2 * M;
    L = std::sqrt(N / std::numbers::sqrt2);
    // f[j], j = 0..M2-1 holds [0, samples(k=-M+1..M-1)] in fftshifted order.
    std::array<double, 4 * kWeidemanN> f{};
    for (int k = -M + 1; k <= M - 1; ++k) {
      const double theta = k * std::numbers::pi / M;
      const double t = L * std::tan(0.5 * theta);
      const double val = std::exp(-t * t) * (L * L + t * t);
      int idx = (k + M2) % M2; // after fftshift, sample k sits at slot k mod M2
      f[static_cast<std::size_t>(idx)] = val;
    }
    // Real part of the forward DFT, scaled; only harmonics 1..N are needed.
    for (int n = 1; n <= N; ++n) {
      double acc = 0.0;
      for (int j = 0; j < M2; ++j) {
        acc += f[static_cast<std::size_t>(j)] *
               std::cos(2.0 * std::numbers::pi * n * j / M2);
      }
      a[static_cast<std::size_t>(N - n)] = acc / M2; // stored highest-degree first
    }
  }
};

const WeidemanTable& weideman() {
  static const WeidemanTable table;
  return table;
}

/// Laplace continued fraction, accurate for |z|^2 >~ 64 in the upper half-plane.
std::complex<double> faddeeva_continued_fraction(std::complex<double> z) {
  constexpr double inv_sqrt_pi = 0.5641895835477562869; // 1/sqrt(pi)
  std::complex<double> r(0.0, 0.0);
  for (int n = 12; n >= 1; --n) {
    r = (0.5 * n) / (z - r);
  }
  return std::complex<double>(0.0, inv_sqrt_pi) / (z - r);
}

} // namespace

std::complex<double> faddeeva_w(std::complex<double> z) {
  if (std::norm(z) > 64.0) {
    return faddeeva_continued_fraction(z);
  }
  const WeidemanTable& table = weideman();
  const std::complex<double> iz(-z.imag(), z.real());
  const std::complex<double> denom = table.L - iz;
  const std::complex<double> Z = (table.L + iz) / denom;
  std::complex<double> p(0.0, 0.0);
  for (double coeff : table.a) {
    p = p * Z + coeff;
  }
  constexpr double inv_sqrt_pi = 0.5641895835477562869;
  return 2.0 * p / (denom * denom) + inv_sqrt_pi / denom;
}

std::complex<double> gaussian_erf_term(double u, double v) {
  if (u < 0.0) {
    return -gaussian_erf_term(-u, -v);
  }
  // E(u,v) = e^{-v^2} - e^{-u^2} e^{-2iuv} w(-v + iu); Im(-v + iu) = u >= 0.
  const std::complex<double> w = faddeeva_w(std::complex<double>(-v, u));
  const std::complex<double> osc = std::polar(std::exp(-u * u), -2.0 * u * v);
  return std::exp(-v * v) - osc * w;
}

} // namespace utm
