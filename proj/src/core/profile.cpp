#include "core/profile.hpp"

#include <cassert>
#include <cmath>

namespace utm {

Profile::Profile(ProfileDescriptor descriptor, Region region, double amplitude)
    : descriptor_(std::move(descriptor)), region_(region), amplitude_(amplitude) {
  if (const auto* grid = std::get_if<SampledGridDescriptor>(&descriptor_)) {
    assert(grid->values.size() >= 2);
    spline_ = std::make_shared<const UniformCubicSpline>(grid->x0, grid->h, grid->values);
  }
}

Profile Profile::gaussian_window(double center, double width, Region region, double amplitude,
                                 std::optional<double> window_radius) {
  GaussianWindowDescriptor d;
  d.center = center;
  d.width = width;
  d.window_radius = window_radius.value_or(6.0 * width);
  return Profile(d, region, amplitude);
}

Profile Profile::decaying_exponential(double rate, Region region, double amplitude) {
  return Profile(DecayingExponentialDescriptor{rate}, region, amplitude);
}

Profile Profile::sampled_grid(double x0, double h, std::vector<std::complex<double>> values,
                              Region region, double amplitude) {
  SampledGridDescriptor d;
  d.x0 = x0;
  d.h = h;
  d.values = std::move(values);
  return Profile(std::move(d), region, amplitude);
}

std::complex<double> Profile::operator()(double x) const {
  return std::visit(
      [&](const auto& d) -> std::complex<double> {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ZeroDescriptor>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, GaussianWindowDescriptor>) {
          const double u = x - d.center;
          if (std::abs(u) > d.window_radius) {
            return 0.0;
          }
          const double s = u / d.width;
          return amplitude_ * std::exp(-s * s);
        } else if constexpr (std::is_same_v<T, DecayingExponentialDescriptor>) {
          const double sign = (region_ == Region::Left) ? 1.0 : -1.0;
          return amplitude_ * std::exp(sign * d.rate * x);
        } else {
          if (x < spline_->x_front() || x > spline_->x_back()) {
            return 0.0;
          }
          return amplitude_ * (*spline_)(x);
        }
      },
      descriptor_);
}

std::complex<double> Profile::derivative(double x) const {
  return std::visit(
      [&](const auto& d) -> std::complex<double> {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ZeroDescriptor>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, GaussianWindowDescriptor>) {
          const double u = x - d.center;
          if (std::abs(u) > d.window_radius) {
            return 0.0;
          }
          const double s = u / d.width;
          return amplitude_ * std::exp(-s * s) * (-2.0 * u / (d.width * d.width));
        } else if constexpr (std::is_same_v<T, DecayingExponentialDescriptor>) {
          const double sign = (region_ == Region::Left) ? 1.0 : -1.0;
          return amplitude_ * sign * d.rate * std::exp(sign * d.rate * x);
        } else {
          if (x < spline_->x_front() || x > spline_->x_back()) {
            return 0.0;
          }
          return amplitude_ * spline_->derivative(x);
        }
      },
      descriptor_);
}

double Profile::support_radius() const {
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ZeroDescriptor>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, GaussianWindowDescriptor>) {
          return std::abs(d.center) + d.window_radius;
        } else if constexpr (std::is_same_v<T, DecayingExponentialDescriptor>) {
          // |amp| e^{-rate R} <= 1e-18 * max(1, |amp|)
          return 41.5 / d.rate;
        } else {
          return std::max(std::abs(spline_->x_front()), std::abs(spline_->x_back()));
        }
      },
      descriptor_);
}

} // namespace utm
