#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "core/spline.hpp"

namespace utm {

/// Controls for the spectral inversion integral over k.
///
/// `panels` Gauss-Legendre panels with `nodes_per_panel` nodes each cover
/// [0, k_max]; the grid is mirrored through k=0 so that odd integrand parts
/// cancel exactly at symmetric points. `tail_tolerance` bounds the estimated
/// contribution of |k| > k_max.
struct QuadratureSpec {
  double k_max = 40.0;
  int panels = 0; // 0: derived from the panel-width rule at evaluation time
  int nodes_per_panel = 16;
  double tail_tolerance = 1e-6;
};

/// Gauss-Legendre abscissae/weights on [-1, 1], computed by Newton iteration
/// on the Legendre recurrence (deterministic, ~1 ulp).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Symmetric spectral grid: `panels` equal panels on [0, k_max], each with an
/// n-point Gauss-Legendre rule, mirrored to [-k_max, 0). Nodes come in exact
/// +/- pairs; weights are the matching panel weights.
struct SpectralGrid {
  std::vector<double> k;
  std::vector<double> w;
};
SpectralGrid symmetric_spectral_grid(double k_max, int panels, int nodes_per_panel);

/// First four oscillatory moments m_j = \int_0^1 s^j e^{z s} ds, j = 0..3,
/// by upward recurrence (|z| >= 0.8) or Taylor series (|z| < 0.8).
void exp_moments(std::complex<double> z, std::complex<double> m[4]);

/// Exact integral of a uniform cubic spline against e^{omega x} over
/// [spline.x_front(), min(b, spline.x_back())]. The integral of each cubic
/// piece is evaluated in closed form through exp_moments, so the only error
/// is the spline's own interpolation error.
std::complex<double> integrate_spline_exp(const UniformCubicSpline& f,
                                          std::complex<double> omega, double b);

/// Adaptive composite Simpson quadrature with absolute+relative target
/// `tol`; throws NonIntegrableError when the subdivision budget is exhausted.
std::complex<double> adaptive_simpson(const std::function<std::complex<double>(double)>& f,
                                      double a, double b, double tol, int max_depth = 28);

/// Error raised when adaptive quadrature cannot reach its tolerance.
struct NonIntegrableError : std::exception {
  const char* what() const noexcept override {
    return "quadrature failed to converge within the panel budget";
  }
};

} // namespace utm
