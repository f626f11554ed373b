#include "core/dispersion.hpp"

#include <cmath>
#include <stdexcept>

namespace utm {

double alpha(double mass, double k) { return std::hypot(mass, k); }

std::complex<double> dispersion(double mass, Branch branch, double k) {
  const double magnitude = (mass == 0.0) ? k : alpha(mass, k);
  return {0.0, branch == Branch::Plus ? magnitude : -magnitude};
}

SpectralMatrices diagonalizer(double mass, double k) {
  if (mass <= 0.0) {
    throw std::invalid_argument("diagonalizer requires mass > 0 (massless symbol is diagonal)");
  }
  SpectralMatrices s;
  const std::complex<double> im(0.0, mass);
  const std::complex<double> ik(0.0, k);
  s.omega[0] = dispersion(mass, Branch::Plus, k);
  s.omega[1] = dispersion(mass, Branch::Minus, k);
  s.A = {{{im, s.omega[0] - ik}, {im, s.omega[1] - ik}}};
  s.Lambda = {{{ik, im}, {im, -ik}}};
  // det A = i*m*(Omega_minus - Omega_plus), formed without cancellation.
  const std::complex<double> det = im * (s.omega[1] - s.omega[0]);
  s.A_inv = {{{(s.omega[1] - ik) / det, -(s.omega[0] - ik) / det}, {-im / det, im / det}}};
  return s;
}

} // namespace utm
