#pragma once

#include <array>
#include <complex>

namespace utm {

/// The two dispersion branches of the 1-D Dirac symbol.
enum class Branch { Plus, Minus };

/// alpha(k) = sqrt(k^2 + m^2), the shared magnitude of both branches.
double alpha(double mass, double k);

/// Omega_branch(k): +/- i*sqrt(k^2+m^2) for massive systems. The massless
/// branches are hard-coded as +/- i*k (not the m->0 limit +/- i*|k|, which
/// differs for k < 0); transport solutions require Omega_plus = i*k globally.
std::complex<double> dispersion(double mass, Branch branch, double k);

using Mat2 = std::array<std::array<std::complex<double>, 2>, 2>;

/// Similarity data diagonalizing the spatial symbol: A * Lambda = Omega * A
/// with Omega = diag(Omega_plus, Omega_minus).
struct SpectralMatrices {
  Mat2 A;
  Mat2 A_inv;
  Mat2 Lambda;
  std::complex<double> omega[2];
};

/// Builds the diagonalizer for a massive system. Rejects mass = 0 (the
/// massless symbol is already diagonal and A would be singular).
SpectralMatrices diagonalizer(double mass, double k);

} // namespace utm
