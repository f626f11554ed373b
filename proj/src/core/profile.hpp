#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "core/spline.hpp"

namespace utm {

/// Which side of the interface an object belongs to. Region::Left lives on
/// x < 0 (or (-L, 0)), Region::Right on x > 0 (or (0, L)). Time-profiles
/// (boundary data, traces) are anchored at 0 and use Right semantics.
enum class Region { Left, Right };

struct ZeroDescriptor {};

/// amp * exp(-((x-center)/width)^2), hard-truncated to
/// [center - window_radius, center + window_radius] (C^0 cutoff).
struct GaussianWindowDescriptor {
  double center = 0.0;
  double width = 1.0;
  double window_radius = 6.0; // defaults to 6*width when built via make()
};

/// Exponential decaying away from the interface: e^{rate*x} on the Left,
/// e^{-rate*x} on the Right (and in time profiles).
struct DecayingExponentialDescriptor {
  double rate = 1.0;
};

/// Cubic interpolant of tabulated complex samples on a uniform grid;
/// identically zero outside the sampled range.
struct SampledGridDescriptor {
  double x0 = 0.0;
  double h = 1.0;
  std::vector<std::complex<double>> values;
};

using ProfileDescriptor = std::variant<ZeroDescriptor, GaussianWindowDescriptor,
                                       DecayingExponentialDescriptor, SampledGridDescriptor>;

/// A scalar complex field of one real variable plus the metadata needed to
/// transform it: which region it lives in and an overall amplitude.
class Profile {
 public:
  Profile() : descriptor_(ZeroDescriptor{}), region_(Region::Left) {}

  Profile(ProfileDescriptor descriptor, Region region, double amplitude = 1.0);

  static Profile zero(Region region) { return Profile(ZeroDescriptor{}, region); }

  static Profile gaussian_window(double center, double width, Region region,
                                 double amplitude = 1.0,
                                 std::optional<double> window_radius = std::nullopt);

  static Profile decaying_exponential(double rate, Region region, double amplitude = 1.0);

  static Profile sampled_grid(double x0, double h, std::vector<std::complex<double>> values,
                              Region region, double amplitude = 1.0);

  std::complex<double> operator()(double x) const;

  /// Pointwise derivative (one-sided limits at window/grid edges resolve to
  /// the interior expression; zero outside the support).
  std::complex<double> derivative(double x) const;

  const ProfileDescriptor& descriptor() const { return descriptor_; }
  Region region() const { return region_; }
  double amplitude() const { return amplitude_; }
  bool is_zero() const { return std::holds_alternative<ZeroDescriptor>(descriptor_); }

  /// Radius R such that the profile is below ~1e-18 outside [-R, R]
  /// (exact support bound for windowed and sampled families).
  double support_radius() const;

  /// Identity of the underlying data, used as a memoization key.
  const void* cache_key() const { return this; }

  const UniformCubicSpline* spline() const { return spline_ ? spline_.get() : nullptr; }

 private:
  ProfileDescriptor descriptor_;
  Region region_;
  double amplitude_ = 1.0;
  std::shared_ptr<const UniformCubicSpline> spline_; // SampledGrid only
};

} // namespace utm
