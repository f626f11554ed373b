#pragma once

#include <complex>
#include <map>
#include <mutex>

#include "core/geometry.hpp"
#include "core/profile.hpp"

namespace utm {

/// Half-line or finite-interval Fourier transform of a spatial profile:
/// Left region integrates e^{-ikx} f(x) over (-inf, 0] (or [-L, 0]),
/// Right over [0, inf) (or [0, L]). Closed forms are used for the analytic
/// families; sampled grids are integrated exactly piecewise.
std::complex<double> spatial_transform(const Profile& profile, Region region,
                                       const Geometry& geometry, double k);

/// The same transform evaluated at -k; the term lists mix both evaluations
/// in one integrand via the k -> -k symmetry of the dispersion relation.
std::complex<double> reflected_transform(const Profile& profile, Region region,
                                         const Geometry& geometry, double k);

/// Upper bound on |spatial_transform(profile, ., ., q)| for all |q| >= k,
/// from the family's decay envelope (used by the truncation-radius rule).
double transform_envelope(const Profile& profile, double k);

/// Volterra-type time transform: \int_0^t e^{Omega s} trace(s) ds.
/// Omega is purely imaginary throughout this artifact (Omega = +/- i alpha);
/// closed forms cover the analytic families in that case and general Omega
/// falls back to adaptive quadrature at 1e-10 relative tolerance.
std::complex<double> time_transform(const Profile& trace, std::complex<double> omega, double t);

/// Memoizing wrapper around spatial_transform for scalar evaluation paths
/// that revisit the same k nodes; safe for concurrent use.
class SpatialTransformCache {
 public:
  SpatialTransformCache(Profile profile, Region region, Geometry geometry)
      : profile_(std::move(profile)), region_(region), geometry_(geometry) {}

  std::complex<double> operator()(double k) const;
  std::complex<double> reflected(double k) const { return (*this)(-k); }
  const Profile& profile() const { return profile_; }

 private:
  Profile profile_;
  Region region_;
  Geometry geometry_;
  mutable std::mutex mutex_;
  mutable std::map<double, std::complex<double>> memo_;
};

} // namespace utm
