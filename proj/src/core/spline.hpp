#pragma once

#include <cassert>
#include <complex>
#include <cstddef>
#include <vector>

namespace utm {

/// Natural cubic spline through complex samples on a uniform grid.
///
/// Piece p covers [x0 + p*h, x0 + (p+1)*h] with local coordinate
/// s = (x - x_p)/h in [0,1] and value c0[p] + c1[p] s + c2[p] s^2 + c3[p] s^3.
/// The piece coefficients are exposed so integrals of the spline against
/// oscillatory kernels can be evaluated in closed form.
class UniformCubicSpline {
 public:
  UniformCubicSpline() = default;

  UniformCubicSpline(double x0, double h, std::vector<std::complex<double>> values)
      : x0_(x0), h_(h), y_(std::move(values)) {
    assert(h_ > 0.0);
    assert(y_.size() >= 2);
    build();
  }

  double x_front() const { return x0_; }
  double x_back() const { return x0_ + h_ * static_cast<double>(y_.size() - 1); }
  double step() const { return h_; }
  std::size_t piece_count() const { return y_.size() - 1; }
  std::size_t size() const { return y_.size(); }
  const std::complex<double>& value(std::size_t i) const { return y_[i]; }

  /// Coefficients of piece p in the local coordinate s in [0,1].
  void piece(std::size_t p, std::complex<double>& c0, std::complex<double>& c1,
             std::complex<double>& c2, std::complex<double>& c3) const {
    c0 = y_[p];
    c1 = b_[p];
    c2 = c_[p];
    c3 = d_[p];
  }

  std::complex<double> operator()(double x) const {
    const auto [p, s] = locate(x);
    return ((d_[p] * s + c_[p]) * s + b_[p]) * s + y_[p];
  }

  /// First derivative with respect to x.
  std::complex<double> derivative(double x) const {
    const auto [p, s] = locate(x);
    return ((3.0 * d_[p] * s + 2.0 * c_[p]) * s + b_[p]) / h_;
  }

 private:
  std::pair<std::size_t, double> locate(double x) const {
    double u = (x - x0_) / h_;
    std::size_t p;
    if (u <= 0.0) {
      p = 0;
      u = 0.0;
    } else {
      p = static_cast<std::size_t>(u);
      if (p >= piece_count()) {
        p = piece_count() - 1;
      }
      u -= static_cast<double>(p);
      if (u > 1.0) {
        u = 1.0;
      }
    }
    return {p, u};
  }

  void build() {
    const std::size_t n = y_.size();
    b_.resize(n - 1);
    c_.resize(n - 1);
    d_.resize(n - 1);
    if (n == 2) {
      b_[0] = y_[1] - y_[0];
      c_[0] = d_[0] = 0.0;
      return;
    }
    // Solve for second derivatives m_i (natural: m_0 = m_{n-1} = 0) via the
    // standard tridiagonal system with rows [1 4 1] in units of h.
    std::vector<std::complex<double>> m(n, 0.0), rhs(n - 2), diag(n - 2, 4.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      rhs[i - 1] = 6.0 * (y_[i + 1] - 2.0 * y_[i] + y_[i - 1]);
    }
    for (std::size_t i = 1; i < rhs.size(); ++i) {
      const std::complex<double> w = 1.0 / diag[i - 1];
      diag[i] -= w;
      rhs[i] -= w * rhs[i - 1];
    }
    for (std::size_t i = rhs.size(); i-- > 0;) {
      std::complex<double> upper = (i + 1 < rhs.size()) ? m[i + 2] : 0.0;
      m[i + 1] = (rhs[i] - upper) / diag[i];
    }
    // Convert to per-piece polynomial coefficients in the local coordinate;
    // the factor h^2 cancels because m here stores h^2 * f''.
    for (std::size_t p = 0; p + 1 < n; ++p) {
      b_[p] = (y_[p + 1] - y_[p]) - (2.0 * m[p] + m[p + 1]) / 6.0;
      c_[p] = 0.5 * m[p];
      d_[p] = (m[p + 1] - m[p]) / 6.0;
    }
  }

  double x0_ = 0.0;
  double h_ = 1.0;
  std::vector<std::complex<double>> y_, b_, c_, d_;
};

} // namespace utm
