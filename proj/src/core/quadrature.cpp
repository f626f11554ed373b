#include "core/quadrature.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace utm {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  assert(n >= 2);
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-based initial guess for the i-th positive root.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence for P_n(x) and P'_n(x).
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        break;
      }
    }
    const std::size_t lo = static_cast<std::size_t>(i);
    const std::size_t hi = static_cast<std::size_t>(n - 1 - i);
    nodes[lo] = -x;
    nodes[hi] = x;
    weights[lo] = weights[hi] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

SpectralGrid symmetric_spectral_grid(double k_max, int panels, int nodes_per_panel) {
  assert(k_max > 0.0 && panels > 0 && nodes_per_panel >= 2);
  std::vector<double> gl_x, gl_w;
  gauss_legendre(nodes_per_panel, gl_x, gl_w);
  const double width = k_max / panels;
  SpectralGrid grid;
  const std::size_t per_side = static_cast<std::size_t>(panels) * gl_x.size();
  grid.k.reserve(2 * per_side);
  grid.w.reserve(2 * per_side);
  // Positive half first, ascending; mirrored nodes appended afterwards so
  // each index i pairs with index i + per_side at exactly -k.
  for (int p = 0; p < panels; ++p) {
    const double a = p * width;
    for (std::size_t j = 0; j < gl_x.size(); ++j) {
      grid.k.push_back(a + 0.5 * width * (gl_x[j] + 1.0));
      grid.w.push_back(0.5 * width * gl_w[j]);
    }
  }
  for (std::size_t i = 0; i < per_side; ++i) {
    grid.k.push_back(-grid.k[i]);
    grid.w.push_back(grid.w[i]);
  }
  return grid;
}

void exp_moments(std::complex<double> z, std::complex<double> m[4]) {
  if (std::abs(z) < 0.8) {
    // m_j = sum_{n>=0} z^n / (n! (j+n+1)); 24 terms reach ~1e-18 at |z|=0.8.
    for (int j = 0; j < 4; ++j) {
      std::complex<double> term(1.0, 0.0);
      std::complex<double> acc = term / static_cast<double>(j + 1);
      for (int n = 1; n < 24; ++n) {
        term *= z / static_cast<double>(n);
        acc += term / static_cast<double>(j + n + 1);
      }
      m[j] = acc;
    }
    return;
  }
  const std::complex<double> ez = std::exp(z);
  m[0] = (ez - 1.0) / z;
  for (int j = 1; j < 4; ++j) {
    m[j] = (ez - static_cast<double>(j) * m[j - 1]) / z;
  }
}

std::complex<double> integrate_spline_exp(const UniformCubicSpline& f,
                                          std::complex<double> omega, double b) {
  const double h = f.step();
  const double a = f.x_front();
  const double upper = std::min(b, f.x_back());
  if (upper <= a) {
    return 0.0;
  }
  const std::complex<double> zh = omega * h;
  // e^{omega x_p} advanced by one complex multiply per piece.
  std::complex<double> phase = std::exp(omega * a);
  const std::complex<double> step = std::exp(zh);
  std::complex<double> m[4];
  exp_moments(zh, m);
  std::complex<double> acc = 0.0;
  const std::size_t pieces = f.piece_count();
  for (std::size_t p = 0; p < pieces; ++p) {
    const double x_left = a + h * static_cast<double>(p);
    std::complex<double> c0, c1, c2, c3;
    const double remaining = upper - x_left;
    if (remaining <= 0.0) {
      break;
    }
    f.piece(p, c0, c1, c2, c3);
    if (remaining >= h * (1.0 - 1e-14)) {
      acc += phase * h * (c0 * m[0] + c1 * m[1] + c2 * m[2] + c3 * m[3]);
    } else {
      // Partial final piece: \int_0^{se} s^j e^{zh s} ds = se^{j+1} m_j(zh*se).
      const double se = remaining / h;
      std::complex<double> mp[4];
      exp_moments(zh * se, mp);
      double sj = se;
      std::complex<double> part = 0.0;
      const std::complex<double> coef[4] = {c0, c1, c2, c3};
      for (int j = 0; j < 4; ++j) {
        part += coef[j] * sj * mp[j];
        sj *= se;
      }
      acc += phase * h * part;
      break;
    }
    phase *= step;
  }
  return acc;
}

namespace {

std::complex<double> simpson_step(const std::function<std::complex<double>(double)>& f,
                                  double a, double b, std::complex<double> fa,
                                  std::complex<double> fm, std::complex<double> fb,
                                  std::complex<double> whole, double tol, int depth,
                                  int max_depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const std::complex<double> flm = f(lm);
  const std::complex<double> frm = f(rm);
  const std::complex<double> left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const std::complex<double> right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const std::complex<double> delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  if (depth >= max_depth) {
    throw NonIntegrableError{};
  }
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
}

} // namespace

std::complex<double> adaptive_simpson(const std::function<std::complex<double>(double)>& f,
                                      double a, double b, double tol, int max_depth) {
  if (a == b) {
    return 0.0;
  }
  const std::complex<double> fa = f(a);
  const std::complex<double> fb = f(b);
  const std::complex<double> fm = f(0.5 * (a + b));
  const std::complex<double> whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 0, max_depth);
}

} // namespace utm
