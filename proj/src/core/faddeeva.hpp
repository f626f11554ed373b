#pragma once

#include <complex>

namespace utm {

/// Scaled complex error function w(z) = e^{-z^2} erfc(-iz), valid for
/// Im(z) >= 0. Accuracy is ~1e-13 absolute on the closed upper half-plane.
std::complex<double> faddeeva_w(std::complex<double> z);

/// Windowed-Gaussian transform helper E(u, v) = e^{-v^2} erf(u + i v),
/// evaluated through w(z) in the numerically stable half-plane. Both the
/// spatial transform of a truncated Gaussian against e^{-ikx} and the time
/// transform against e^{i sigma s} reduce to differences of this function.
std::complex<double> gaussian_erf_term(double u, double v);

} // namespace utm
