#include "core/massless.hpp"

#include <limits>
#include <stdexcept>

namespace utm {
namespace {

void validate(const InterfaceProblem& problem, int component, const QueryPoint& q) {
  if (!problem.massless()) {
    throw std::invalid_argument("massless evaluation requires both masses to be zero");
  }
  if (component != 1 && component != 2) {
    throw std::invalid_argument("component must be 1 or 2");
  }
  if (q.region != 1 && q.region != 2) {
    throw std::invalid_argument("region must be 1 or 2");
  }
  if (q.t < 0.0 || q.t > problem.geometry.T) {
    throw std::domain_error("query time outside [0, T]");
  }
  const double lo = (q.region == 1)
                        ? (problem.geometry.finite() ? -problem.geometry.L
                                                     : -std::numeric_limits<double>::infinity())
                        : 0.0;
  const double hi = (q.region == 1)
                        ? 0.0
                        : (problem.geometry.finite() ? problem.geometry.L
                                                     : std::numeric_limits<double>::infinity());
  if (q.x < lo || q.x > hi) {
    throw std::domain_error("query point outside the region's spatial domain");
  }
}

} // namespace

std::complex<double> eval_massless(const InterfaceProblem& problem, int component,
                                   const QueryPoint& q) {
  validate(problem, component, q);
  const bool finite = problem.geometry.finite();
  const double L = problem.geometry.L;
  if (component == 1) {
    const double u = q.x - q.t;
    if (u >= 0.0) {
      return problem.initial_profile(1, 2)(u);
    }
    if (!finite || u >= -L) {
      return problem.initial_profile(1, 1)(u);
    }
    // The characteristic entered through x = -L at time t - x - L.
    return problem.boundary_profile(1, 1)(q.t - q.x - L);
  }
  const double u = q.x + q.t;
  if (u <= 0.0) {
    return problem.initial_profile(2, 1)(u);
  }
  if (!finite || u <= L) {
    return problem.initial_profile(2, 2)(u);
  }
  // The characteristic entered through x = +L at time x + t - L.
  return problem.boundary_profile(2, 2)(u - L);
}

} // namespace utm
